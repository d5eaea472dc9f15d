//! Degree-truncated free Lie algebra elements in the Lyndon basis, with
//! exact rational coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::lyndon::{self, LyndonWord};
use crate::rational::{rat, Rat};

/// Ordered list of generator names; the order fixes lexicographic
/// comparisons of Lyndon words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(!names.is_empty() && names.len() <= u8::MAX as usize);
        Arc::new(Alphabet { names })
    }

    /// The two-generator alphabet `{x, y}` of the hexagon calculus.
    pub fn xy() -> Arc<Self> {
        Alphabet::new(["x", "y"])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: u8) -> &str {
        &self.names[index as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    /// Concatenated generator names of a word, e.g. `xxy`.
    pub fn word_string(&self, word: &LyndonWord) -> String {
        word.letters().iter().map(|&l| self.name(l)).collect()
    }

    fn describe(&self) -> String {
        self.names.join(",")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("alphabet mismatch: {{{0}}} vs {{{1}}}")]
    AlphabetMismatch(String, String),
    #[error("truncation mismatch: max degree {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("operator needs alphabet {{{expected}}}, got {{{got}}}")]
    WrongAlphabet { expected: String, got: String },
    #[error("degree {degree} exceeds truncation order {max_degree}")]
    DegreeOverflow { degree: usize, max_degree: usize },
}

/// An element of the free Lie algebra over an alphabet, truncated at
/// `max_degree`, stored as a map from Lyndon basis words to nonzero
/// rational coefficients. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSeries {
    alphabet: Arc<Alphabet>,
    max_degree: usize,
    terms: BTreeMap<LyndonWord, Rat>,
}

impl LieSeries {
    pub fn zero(alphabet: Arc<Alphabet>, max_degree: usize) -> Self {
        assert!(max_degree >= 1);
        LieSeries {
            alphabet,
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    /// The generator named `name` as a degree-1 basis element.
    pub fn generator(
        alphabet: Arc<Alphabet>,
        max_degree: usize,
        name: &str,
    ) -> Result<Self, AlgebraError> {
        let idx = alphabet
            .index_of(name)
            .ok_or_else(|| AlgebraError::MissingImage(name.to_string()))?;
        Ok(Self::from_terms(
            alphabet,
            max_degree,
            [(LyndonWord::generator(idx), rat(1, 1))],
        ))
    }

    /// Builds a series from `(word, coefficient)` pairs, dropping zeros and
    /// words above the truncation order is a bug: words must fit.
    pub fn from_terms(
        alphabet: Arc<Alphabet>,
        max_degree: usize,
        terms: impl IntoIterator<Item = (LyndonWord, Rat)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (w, c) in terms {
            assert!(w.degree() <= max_degree, "term above truncation order");
            assert!((w.letters().iter().max().copied().unwrap_or(0) as usize) < alphabet.len());
            if !c.is_zero() {
                let entry = map.entry(w).or_insert_with(Rat::zero);
                *entry += c;
                if entry.is_zero() {
                    map.retain(|_, v| !v.is_zero());
                }
            }
        }
        map.retain(|_, v| !v.is_zero());
        LieSeries {
            alphabet,
            max_degree,
            terms: map,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LyndonWord, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &LyndonWord) -> Rat {
        self.terms.get(word).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &LieSeries) -> Result<(), AlgebraError> {
        if self.alphabet.as_ref() != other.alphabet.as_ref() {
            return Err(AlgebraError::AlphabetMismatch(
                self.alphabet.describe(),
                other.alphabet.describe(),
            ));
        }
        if self.max_degree != other.max_degree {
            return Err(AlgebraError::TruncationMismatch(
                self.max_degree,
                other.max_degree,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &LieSeries) -> Result<LieSeries, AlgebraError> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let entry = terms.entry(w.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, v| !v.is_zero());
        Ok(LieSeries {
            alphabet: self.alphabet.clone(),
            max_degree: self.max_degree,
            terms,
        })
    }

    pub fn sub(&self, other: &LieSeries) -> Result<LieSeries, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LieSeries {
        self.scale(&rat(-1, 1))
    }

    pub fn scale(&self, factor: &Rat) -> LieSeries {
        if factor.is_zero() {
            return LieSeries::zero(self.alphabet.clone(), self.max_degree);
        }
        LieSeries {
            alphabet: self.alphabet.clone(),
            max_degree: self.max_degree,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect(),
        }
    }

    /// The same element at a different truncation order. Raising the order
    /// keeps every term; lowering it drops the terms above the new order.
    pub fn retruncated(&self, max_degree: usize) -> LieSeries {
        assert!(max_degree >= 1);
        LieSeries {
            alphabet: self.alphabet.clone(),
            max_degree,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() <= max_degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Only the degree-`d` terms.
    pub fn homogeneous_component(&self, degree: usize) -> LieSeries {
        LieSeries {
            alphabet: self.alphabet.clone(),
            max_degree: self.max_degree,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact equality test; errors on alphabet/truncation mismatch.
    pub fn equals(&self, other: &LieSeries) -> Result<bool, AlgebraError> {
        self.check_compatible(other)?;
        Ok(self.terms == other.terms)
    }

    /// Lie bracket `[self, other]`, truncated at the common max degree.
    pub fn bracket(&self, other: &LieSeries) -> Result<LieSeries, AlgebraError> {
        self.check_compatible(other)?;
        let mut table = BracketTable::new();
        Ok(self.bracket_with(other, &mut table))
    }

    fn bracket_with(&self, other: &LieSeries, table: &mut BracketTable) -> LieSeries {
        let mut acc: BTreeMap<LyndonWord, Rat> = BTreeMap::new();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                if u.degree() + v.degree() > self.max_degree {
                    continue;
                }
                let c = cu * cv;
                for (w, k) in table.bracket_words(u, v) {
                    let entry = acc.entry(w.clone()).or_insert_with(Rat::zero);
                    *entry += k * &c;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        LieSeries {
            alphabet: self.alphabet.clone(),
            max_degree: self.max_degree,
            terms: acc,
        }
    }

    /// Applies the Lie homomorphism sending each generator to its image.
    /// Images must all live over one common alphabet and truncation order;
    /// the result lives there too.
    pub fn substitute(
        &self,
        images: &HashMap<String, LieSeries>,
    ) -> Result<LieSeries, AlgebraError> {
        let mut by_index: Vec<&LieSeries> = Vec::with_capacity(self.alphabet.len());
        for name in self.alphabet.names() {
            by_index.push(
                images
                    .get(name)
                    .ok_or_else(|| AlgebraError::MissingImage(name.clone()))?,
            );
        }
        let first = by_index[0];
        for img in &by_index[1..] {
            first.check_compatible(img)?;
        }
        let target_alphabet = first.alphabet.clone();
        let target_degree = first.max_degree;

        let mut table = BracketTable::new();
        let mut memo: HashMap<LyndonWord, LieSeries> = HashMap::new();
        let mut result = LieSeries::zero(target_alphabet.clone(), target_degree);
        for (w, c) in &self.terms {
            let image = word_image(w, &by_index, &mut memo, &mut table);
            result = result.add(&image.scale(c)).expect("compatible by construction");
        }
        Ok(result)
    }

    /// Applies the derivation with the given generator values (Leibniz rule
    /// over standard bracketings). Generator values live over the same
    /// alphabet and truncation as `self`.
    pub fn derive(
        &self,
        generator_values: &HashMap<String, LieSeries>,
    ) -> Result<LieSeries, AlgebraError> {
        let mut by_index: Vec<&LieSeries> = Vec::with_capacity(self.alphabet.len());
        for name in self.alphabet.names() {
            let v = generator_values
                .get(name)
                .ok_or_else(|| AlgebraError::MissingImage(name.clone()))?;
            self.check_compatible(v)?;
            by_index.push(v);
        }
        let mut table = BracketTable::new();
        let mut memo: HashMap<LyndonWord, LieSeries> = HashMap::new();
        let mut result = LieSeries::zero(self.alphabet.clone(), self.max_degree);
        for (w, c) in &self.terms {
            let dw = word_derivative(w, &by_index, self, &mut memo, &mut table);
            result = result.add(&dw.scale(c))?;
        }
        Ok(result)
    }

    /// A reproducible random series: every Lyndon word up to the truncation
    /// order gets a small rational coefficient with probability 1/2.
    pub fn random(alphabet: Arc<Alphabet>, max_degree: usize, rng: &mut impl Rng) -> Self {
        let mut terms = Vec::new();
        for d in 1..=max_degree {
            for w in lyndon::lyndon_basis(alphabet.len() as u8, d) {
                if rng.gen_bool(0.5) {
                    let num = rng.gen_range(-9..=9i64);
                    let den = rng.gen_range(1..=9i64);
                    terms.push((w, rat(num, den)));
                }
            }
        }
        LieSeries::from_terms(alphabet, max_degree, terms)
    }
}

/// Image of a basis word under a generator assignment, by structural
/// recursion on the standard factorization.
fn word_image(
    word: &LyndonWord,
    images: &[&LieSeries],
    memo: &mut HashMap<LyndonWord, LieSeries>,
    table: &mut BracketTable,
) -> LieSeries {
    if let Some(hit) = memo.get(word) {
        return hit.clone();
    }
    let result = if word.degree() == 1 {
        images[word.letters()[0] as usize].clone()
    } else {
        let (u, v) = word.standard_factorization();
        let iu = word_image(&u, images, memo, table);
        let iv = word_image(&v, images, memo, table);
        iu.bracket_with(&iv, table)
    };
    memo.insert(word.clone(), result.clone());
    result
}

/// Derivative of a basis word: `D([u,v]) = [D u, v] + [u, D v]`.
fn word_derivative(
    word: &LyndonWord,
    values: &[&LieSeries],
    context: &LieSeries,
    memo: &mut HashMap<LyndonWord, LieSeries>,
    table: &mut BracketTable,
) -> LieSeries {
    if let Some(hit) = memo.get(word) {
        return hit.clone();
    }
    let result = if word.degree() == 1 {
        values[word.letters()[0] as usize].clone()
    } else {
        let (u, v) = word.standard_factorization();
        let du = word_derivative(&u, values, context, memo, table);
        let dv = word_derivative(&v, values, context, memo, table);
        let bu = basis_series(&u, context);
        let bv = basis_series(&v, context);
        let left = du.bracket_with(&bv, table);
        let right = bu.bracket_with(&dv, table);
        left.add(&right).expect("compatible by construction")
    };
    memo.insert(word.clone(), result.clone());
    result
}

fn basis_series(word: &LyndonWord, context: &LieSeries) -> LieSeries {
    LieSeries::from_terms(
        context.alphabet.clone(),
        context.max_degree,
        [(word.clone(), rat(1, 1))],
    )
}

/// Memoized rewriting of brackets of Lyndon basis elements into the basis.
///
/// For Lyndon `u < v` the concatenation `uv` is Lyndon; it equals the
/// standard bracketing `[b(u), b(v)]` exactly when `(u, v)` is the standard
/// factorization of `uv` (i.e. `u` is a letter or its right factor is
/// `>= v`). Otherwise Jacobi against the factorization of `u` rewrites the
/// bracket into strictly smaller left factors.
pub struct BracketTable {
    cache: HashMap<(LyndonWord, LyndonWord), Vec<(LyndonWord, Rat)>>,
}

impl BracketTable {
    pub fn new() -> Self {
        BracketTable {
            cache: HashMap::new(),
        }
    }

    pub fn bracket_words(&mut self, u: &LyndonWord, v: &LyndonWord) -> Vec<(LyndonWord, Rat)> {
        if u == v {
            return Vec::new();
        }
        if u > v {
            return self
                .bracket_words(v, u)
                .into_iter()
                .map(|(w, c)| (w, -c))
                .collect();
        }
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let standard = u.degree() == 1 || u.standard_factorization().1 >= *v;
        let result = if standard {
            let w = LyndonWord::concat(u, v).expect("u < v concatenates to a Lyndon word");
            vec![(w, rat(1, 1))]
        } else {
            // [ [u1,u2], v ] = [u1, [u2,v]] - [u2, [u1,v]]
            let (u1, u2) = u.standard_factorization();
            let mut acc: BTreeMap<LyndonWord, Rat> = BTreeMap::new();
            for (w, c) in self.bracket_words(&u2, v) {
                for (w2, c2) in self.bracket_words(&u1, &w) {
                    *acc.entry(w2).or_insert_with(Rat::zero) += &c * c2;
                }
            }
            for (w, c) in self.bracket_words(&u1, v) {
                for (w2, c2) in self.bracket_words(&u2, &w) {
                    *acc.entry(w2).or_insert_with(Rat::zero) -= &c * c2;
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        };
        self.cache.insert(key, result.clone());
        result
    }
}

impl Default for BracketTable {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Display for LieSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_series(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn xy(max_degree: usize) -> (Arc<Alphabet>, LieSeries, LieSeries) {
        let a = Alphabet::xy();
        let x = LieSeries::generator(a.clone(), max_degree, "x").unwrap();
        let y = LieSeries::generator(a.clone(), max_degree, "y").unwrap();
        (a, x, y)
    }

    #[test]
    fn bracket_of_generator_with_itself_vanishes() {
        let (_, x, _) = xy(4);
        assert!(x.bracket(&x).unwrap().is_zero());
    }

    #[test]
    fn bracket_of_generators_is_basis_element() {
        let (a, x, y) = xy(4);
        let xy_word = LyndonWord::new(vec![0, 1]).unwrap();
        let expected = LieSeries::from_terms(a, 4, [(xy_word, rat(1, 1))]);
        assert_eq!(x.bracket(&y).unwrap(), expected);
    }

    #[test]
    fn bracket_rewrites_into_lyndon_basis() {
        // [[x,y], x] = -[x,[x,y]]
        let (a, x, y) = xy(4);
        let b = x.bracket(&y).unwrap();
        let left = b.bracket(&x).unwrap();
        let xxy = LyndonWord::new(vec![0, 0, 1]).unwrap();
        let expected = LieSeries::from_terms(a, 4, [(xxy, rat(-1, 1))]);
        assert_eq!(left, expected);
    }

    #[test]
    fn truncation_drops_high_degree_cross_terms() {
        let (_, x, y) = xy(2);
        let b = x.bracket(&y).unwrap();
        // degree 3 > max_degree 2
        assert!(b.bracket(&x).unwrap().is_zero());
    }

    #[test]
    fn mismatched_truncations_error() {
        let a = Alphabet::xy();
        let x2 = LieSeries::generator(a.clone(), 2, "x").unwrap();
        let x3 = LieSeries::generator(a.clone(), 3, "x").unwrap();
        assert_eq!(
            x2.bracket(&x3).unwrap_err(),
            AlgebraError::TruncationMismatch(2, 3)
        );
        let b = Alphabet::new(["x", "y", "z"]);
        let xb = LieSeries::generator(b, 2, "x").unwrap();
        assert!(matches!(
            x2.add(&xb).unwrap_err(),
            AlgebraError::AlphabetMismatch(..)
        ));
    }

    #[test]
    fn substitution_examples() {
        let (_a, x, y) = xy(4);
        // phi = [x,y], x -> y, y -> -x-y gives [x,y] back
        let phi = x.bracket(&y).unwrap();
        let mut images = HashMap::new();
        images.insert("x".to_string(), y.clone());
        images.insert("y".to_string(), x.neg().sub(&y).unwrap());
        assert_eq!(phi.substitute(&images).unwrap(), phi);

        // identity substitution
        let mut id = HashMap::new();
        id.insert("x".to_string(), x.clone());
        id.insert("y".to_string(), y.clone());
        assert_eq!(x.substitute(&id).unwrap(), x);

        // phi = [x,[x,y]], x -> x+y, y -> -x: equals [x,[x,y]] + [y,[x,y]]
        let xxy = x.bracket(&phi).unwrap();
        let mut sub = HashMap::new();
        sub.insert("x".to_string(), x.add(&y).unwrap());
        sub.insert("y".to_string(), x.neg());
        let got = xxy.substitute(&sub).unwrap();
        let expected = x
            .bracket(&phi)
            .unwrap()
            .add(&y.bracket(&phi).unwrap())
            .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn substitution_missing_image_errors() {
        let (_, x, _) = xy(3);
        let images = HashMap::new();
        assert_eq!(
            x.substitute(&images).unwrap_err(),
            AlgebraError::MissingImage("x".to_string())
        );
    }

    #[test]
    fn add_scale_component_examples() {
        let (a, x, y) = xy(4);
        assert!(x.add(&x.neg()).unwrap().is_zero());

        let b = x.bracket(&y).unwrap();
        let b3 = x.bracket(&b).unwrap();
        let s = b.add(&b3).unwrap();
        assert_eq!(s.homogeneous_component(3), b3);
        assert_eq!(s.homogeneous_component(2), b);
        assert!(s.homogeneous_component(4).is_zero());

        assert_eq!(b.scale(&rat(3, 1)).scale(&rat(2, 3)), b.scale(&rat(2, 1)));
    }

    #[test]
    fn jacobi_and_antisymmetry_on_random_series() {
        let a = Alphabet::xy();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = LieSeries::random(a.clone(), 6, &mut rng);
            let g = LieSeries::random(a.clone(), 6, &mut rng);
            let h = LieSeries::random(a.clone(), 6, &mut rng);
            let fg = f.bracket(&g).unwrap();
            let gf = g.bracket(&f).unwrap();
            assert_eq!(fg, gf.neg());
            let jac = f
                .bracket(&g.bracket(&h).unwrap())
                .unwrap()
                .add(&g.bracket(&h.bracket(&f).unwrap()).unwrap())
                .unwrap()
                .add(&h.bracket(&f.bracket(&g).unwrap()).unwrap())
                .unwrap();
            assert!(jac.is_zero(), "Jacobi identity failed");
        }
    }

    #[test]
    fn jacobi_on_three_generators() {
        let a = Alphabet::new(["x", "y", "z"]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..8 {
            let f = LieSeries::random(a.clone(), 5, &mut rng);
            let g = LieSeries::random(a.clone(), 5, &mut rng);
            let h = LieSeries::random(a.clone(), 5, &mut rng);
            let jac = f
                .bracket(&g.bracket(&h).unwrap())
                .unwrap()
                .add(&g.bracket(&h.bracket(&f).unwrap()).unwrap())
                .unwrap()
                .add(&h.bracket(&f.bracket(&g).unwrap()).unwrap())
                .unwrap();
            assert!(jac.is_zero());
        }
    }

    #[test]
    fn substitution_by_permutations_composes() {
        let a = Alphabet::new(["x", "y", "z"]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let swap_xy = |s: &LieSeries| {
            let mut m = HashMap::new();
            m.insert("x".into(), LieSeries::generator(a.clone(), 5, "y").unwrap());
            m.insert("y".into(), LieSeries::generator(a.clone(), 5, "x").unwrap());
            m.insert("z".into(), LieSeries::generator(a.clone(), 5, "z").unwrap());
            s.substitute(&m).unwrap()
        };
        let cycle = |s: &LieSeries| {
            let mut m = HashMap::new();
            m.insert("x".into(), LieSeries::generator(a.clone(), 5, "y").unwrap());
            m.insert("y".into(), LieSeries::generator(a.clone(), 5, "z").unwrap());
            m.insert("z".into(), LieSeries::generator(a.clone(), 5, "x").unwrap());
            s.substitute(&m).unwrap()
        };
        let composed = |s: &LieSeries| {
            // swap . cycle: x -> y -> x, y -> z -> z, z -> x -> y
            let mut m = HashMap::new();
            m.insert("x".into(), LieSeries::generator(a.clone(), 5, "x").unwrap());
            m.insert("y".into(), LieSeries::generator(a.clone(), 5, "z").unwrap());
            m.insert("z".into(), LieSeries::generator(a.clone(), 5, "y").unwrap());
            s.substitute(&m).unwrap()
        };
        for _ in 0..6 {
            let s = LieSeries::random(a.clone(), 5, &mut rng);
            assert_eq!(swap_xy(&cycle(&s)), composed(&s));
        }
    }

    #[test]
    fn bilinearity_of_bracket_and_linearity_of_substitute() {
        let a = Alphabet::xy();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let f = LieSeries::random(a.clone(), 6, &mut rng);
            let g = LieSeries::random(a.clone(), 6, &mut rng);
            let h = LieSeries::random(a.clone(), 6, &mut rng);
            let c = rat(rng.gen_range(-5..=5), rng.gen_range(1..=7));
            let lhs = f.add(&g.scale(&c)).unwrap().bracket(&h).unwrap();
            let rhs = f
                .bracket(&h)
                .unwrap()
                .add(&g.bracket(&h).unwrap().scale(&c))
                .unwrap();
            assert_eq!(lhs, rhs);

            let mut images = HashMap::new();
            images.insert("x".into(), h.clone());
            images.insert("y".into(), g.clone());
            let s1 = f.add(&g.scale(&c)).unwrap().substitute(&images).unwrap();
            let s2 = f
                .substitute(&images)
                .unwrap()
                .add(&g.substitute(&images).unwrap().scale(&c))
                .unwrap();
            assert_eq!(s1, s2);
        }
    }

    #[test]
    fn derivation_satisfies_leibniz() {
        let a = Alphabet::xy();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..8 {
            let f = LieSeries::random(a.clone(), 6, &mut rng);
            let g = LieSeries::random(a.clone(), 6, &mut rng);
            let vx = LieSeries::random(a.clone(), 6, &mut rng);
            let vy = LieSeries::random(a.clone(), 6, &mut rng);
            let mut values = HashMap::new();
            values.insert("x".to_string(), vx);
            values.insert("y".to_string(), vy);
            let d_bracket = f.bracket(&g).unwrap().derive(&values).unwrap();
            let leibniz = f
                .derive(&values)
                .unwrap()
                .bracket(&g)
                .unwrap()
                .add(&f.bracket(&g.derive(&values).unwrap()).unwrap())
                .unwrap();
            assert_eq!(d_bracket, leibniz);
        }
    }
}
