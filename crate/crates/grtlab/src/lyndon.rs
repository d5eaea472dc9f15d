//! Lyndon words over a finite alphabet of generator indices.
//!
//! A Lyndon word is strictly smaller than every proper cyclic rotation of
//! itself; the words of degree `d` index a basis of the degree-`d` component
//! of the free Lie algebra via their standard bracketing.

use std::fmt;

/// A Lyndon word, stored as generator indices into an alphabet, with the
/// split point of its standard factorization cached at construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonWord {
    letters: Vec<u8>,
    split: u32, // start of the right standard factor; 0 for single letters
}

impl LyndonWord {
    /// Wraps `letters`, checking the Lyndon property.
    pub fn new(letters: Vec<u8>) -> Option<Self> {
        if is_lyndon(&letters) {
            let split = standard_split(&letters);
            Some(LyndonWord { letters, split })
        } else {
            None
        }
    }

    /// Single-generator word.
    pub fn generator(index: u8) -> Self {
        LyndonWord {
            letters: vec![index],
            split: 0,
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    /// Standard factorization `w = uv` with `v` the longest proper Lyndon
    /// suffix (equivalently the lexicographically smallest proper suffix).
    /// Both factors are Lyndon and `u < v`. Panics on degree-1 words.
    pub fn standard_factorization(&self) -> (LyndonWord, LyndonWord) {
        assert!(self.degree() >= 2, "degree-1 words have no factorization");
        let split = self.split as usize;
        let u = LyndonWord::new(self.letters[..split].to_vec()).expect("left factor is Lyndon");
        let v = LyndonWord::new(self.letters[split..].to_vec()).expect("right factor is Lyndon");
        debug_assert!(u < v);
        (u, v)
    }

    /// Concatenation `uv`; Lyndon whenever `u < v`.
    pub fn concat(u: &LyndonWord, v: &LyndonWord) -> Option<LyndonWord> {
        let mut letters = u.letters.clone();
        letters.extend_from_slice(&v.letters);
        LyndonWord::new(letters)
    }
}

/// Start index of the lexicographically smallest proper suffix.
fn standard_split(letters: &[u8]) -> u32 {
    let n = letters.len();
    if n < 2 {
        return 0;
    }
    let mut best = 1;
    for start in 2..n {
        if letters[start..] < letters[best..] {
            best = start;
        }
    }
    best as u32
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LyndonWord(")?;
        for l in &self.letters {
            write!(f, "{}", l)?;
        }
        write!(f, ")")
    }
}

/// Tests the Lyndon property: `w` strictly smaller than all proper suffixes.
pub fn is_lyndon(letters: &[u8]) -> bool {
    if letters.is_empty() {
        return false;
    }
    for start in 1..letters.len() {
        if letters[start..] <= *letters {
            return false;
        }
    }
    true
}

/// Streams all Lyndon words over `alphabet_size` letters with degree at most
/// `max_degree`, in lexicographic order (Duval's algorithm).
pub fn for_each_lyndon_word(
    alphabet_size: u8,
    max_degree: usize,
    mut visit: impl FnMut(&[u8]),
) {
    assert!(alphabet_size >= 1 && max_degree >= 1);
    let k = alphabet_size;
    let mut w: Vec<u8> = vec![0];
    loop {
        visit(&w);
        // Extend periodically to full length, then increment the last
        // letter that can still grow.
        let m = w.len();
        while w.len() < max_degree {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => return,
        }
    }
}

/// All Lyndon words of exactly `degree` over `alphabet_size` letters,
/// sorted lexicographically.
pub fn lyndon_basis(alphabet_size: u8, degree: usize) -> Vec<LyndonWord> {
    let mut out = Vec::new();
    for_each_lyndon_word(alphabet_size, degree, |w| {
        if w.len() == degree {
            out.push(LyndonWord::new(w.to_vec()).expect("Duval emits Lyndon words"));
        }
    });
    out
}

/// Counts Lyndon words of exactly `degree` without materializing them.
pub fn lyndon_count(alphabet_size: u8, degree: usize) -> u64 {
    let mut n = 0u64;
    for_each_lyndon_word(alphabet_size, degree, |w| {
        if w.len() == degree {
            n += 1;
        }
    });
    n
}

/// Witt necklace formula `(1/d) * sum_{e|d} mu(e) k^{d/e}` for the dimension
/// of the degree-`d` component of the free Lie algebra on `k` generators.
pub fn witt_dimension(alphabet_size: u64, degree: u64) -> u64 {
    let mut total: i128 = 0;
    for e in 1..=degree {
        if degree % e == 0 {
            let mu = moebius(e);
            if mu != 0 {
                total += mu as i128 * (alphabet_size as i128).pow((degree / e) as u32);
            }
        }
    }
    debug_assert!(total >= 0 && total % degree as i128 == 0);
    (total / degree as i128) as u64
}

fn moebius(mut n: u64) -> i64 {
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}
