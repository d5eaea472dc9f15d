//! Table-backed n-ary maps between finite groups, binary pairings with
//! validated properties, and the tuple-domain indexing shared by all
//! exhaustive sweeps.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::group::FiniteGroup;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NaryError {
    #[error("domain size {0}^{1} exceeds the exhaustive-sweep bound 10^6")]
    DomainTooLarge(usize, usize),
    #[error("map table has wrong length")]
    MalformedTable,
    #[error("map is not {0} (first violation at tuple index {1})")]
    SymmetryInvalid(&'static str, usize),
}

/// Mixed-radix indexing of `G^n`: tuple `(x_1, .., x_n)` gets index
/// `x_1 * |G|^{n-1} + ... + x_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleDomain {
    pub base: usize,
    pub arity: usize,
    pub size: usize,
}

impl TupleDomain {
    pub fn new(base: usize, arity: usize) -> Result<Self, NaryError> {
        assert!(base >= 1 && arity >= 1);
        let mut size = 1usize;
        for _ in 0..arity {
            size = size
                .checked_mul(base)
                .filter(|&s| s <= 1_000_000)
                .ok_or(NaryError::DomainTooLarge(base, arity))?;
        }
        Ok(TupleDomain { base, arity, size })
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.arity];
        for slot in (0..self.arity).rev() {
            tuple[slot] = index % self.base;
            index /= self.base;
        }
        tuple
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &x| acc * self.base + x)
    }
}

/// A total map `G_s^n -> G_t` backed by a table over tuple indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaryMap {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    domain: TupleDomain,
    table: Vec<usize>,
}

impl NaryMap {
    pub fn from_fn(
        source: Arc<FiniteGroup>,
        arity: usize,
        target: Arc<FiniteGroup>,
        mut f: impl FnMut(&[usize]) -> usize,
    ) -> Result<Self, NaryError> {
        let domain = TupleDomain::new(source.order(), arity)?;
        let table = (0..domain.size).map(|i| f(&domain.decode(i))).collect();
        Ok(NaryMap {
            source,
            target,
            domain,
            table,
        })
    }

    pub fn from_table(
        source: Arc<FiniteGroup>,
        arity: usize,
        target: Arc<FiniteGroup>,
        table: Vec<usize>,
    ) -> Result<Self, NaryError> {
        let domain = TupleDomain::new(source.order(), arity)?;
        if table.len() != domain.size || table.iter().any(|&v| v >= target.order()) {
            return Err(NaryError::MalformedTable);
        }
        Ok(NaryMap {
            source,
            target,
            domain,
            table,
        })
    }

    pub fn constant(
        source: Arc<FiniteGroup>,
        arity: usize,
        target: Arc<FiniteGroup>,
        value: usize,
    ) -> Result<Self, NaryError> {
        Self::from_fn(source, arity, target, |_| value)
    }

    pub fn random(
        source: Arc<FiniteGroup>,
        arity: usize,
        target: Arc<FiniteGroup>,
        rng: &mut impl Rng,
    ) -> Result<Self, NaryError> {
        let order = target.order();
        Self::from_fn(source, arity, target, |_| rng.gen_range(0..order))
    }

    /// Random totally symmetric map: one random value per sorted
    /// representative tuple.
    pub fn random_symmetric(
        source: Arc<FiniteGroup>,
        arity: usize,
        target: Arc<FiniteGroup>,
        rng: &mut impl Rng,
    ) -> Result<Self, NaryError> {
        let domain = TupleDomain::new(source.order(), arity)?;
        let mut by_rep = std::collections::HashMap::new();
        let order = target.order();
        let table = (0..domain.size)
            .map(|i| {
                let mut t = domain.decode(i);
                t.sort_unstable();
                *by_rep
                    .entry(t)
                    .or_insert_with(|| rng.gen_range(0..order))
            })
            .collect();
        Self::from_table(source, arity, target, table)
    }

    /// Random totally skew-symmetric map into an abelian target: the value
    /// changes sign with each transposition, and tuples with a repeated
    /// entry map into the 2-torsion of the target (here: to the identity).
    pub fn random_skew(
        source: Arc<FiniteGroup>,
        arity: usize,
        target: Arc<FiniteGroup>,
        rng: &mut impl Rng,
    ) -> Result<Self, NaryError> {
        assert!(target.is_abelian());
        let domain = TupleDomain::new(source.order(), arity)?;
        let mut by_rep = std::collections::HashMap::new();
        let order = target.order();
        let identity = target.identity();
        let table: Vec<usize> = (0..domain.size)
            .map(|i| {
                let tuple = domain.decode(i);
                let (rep, parity) = sort_with_parity(&tuple);
                if rep.windows(2).any(|w| w[0] == w[1]) {
                    return identity;
                }
                let v = *by_rep
                    .entry(rep)
                    .or_insert_with(|| rng.gen_range(0..order));
                if parity {
                    target.inv(v)
                } else {
                    v
                }
            })
            .collect();
        Self::from_table(source, arity, target, table)
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn arity(&self) -> usize {
        self.domain.arity
    }

    pub fn domain(&self) -> TupleDomain {
        self.domain
    }

    pub fn value_at(&self, index: usize) -> usize {
        self.table[index]
    }

    pub fn value(&self, tuple: &[usize]) -> usize {
        self.table[self.domain.encode(tuple)]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Pointwise product in the target group.
    pub fn pointwise_mul(&self, other: &NaryMap) -> NaryMap {
        assert_eq!(self.domain, other.domain);
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| self.target.mul(a, b))
            .collect();
        NaryMap {
            source: self.source.clone(),
            target: self.target.clone(),
            domain: self.domain,
            table,
        }
    }

    /// Pointwise inverse in the target group.
    pub fn pointwise_inv(&self) -> NaryMap {
        NaryMap {
            source: self.source.clone(),
            target: self.target.clone(),
            domain: self.domain,
            table: self.table.iter().map(|&a| self.target.inv(a)).collect(),
        }
    }

    /// Precomposition with a self-map of the tuple domain (given as a table
    /// of tuple indices).
    pub fn precompose(&self, map: &[usize]) -> NaryMap {
        assert_eq!(map.len(), self.domain.size);
        NaryMap {
            source: self.source.clone(),
            target: self.target.clone(),
            domain: self.domain,
            table: map.iter().map(|&j| self.table[j]).collect(),
        }
    }

    /// Checks total symmetry exhaustively.
    pub fn validate_symmetric(&self) -> Result<(), NaryError> {
        self.validate_under_transpositions(false)
            .map_err(|i| NaryError::SymmetryInvalid("symmetric", i))
    }

    /// Checks total skew-symmetry (sign flip per transposition) exhaustively.
    pub fn validate_skew(&self) -> Result<(), NaryError> {
        self.validate_under_transpositions(true)
            .map_err(|i| NaryError::SymmetryInvalid("skew-symmetric", i))
    }

    fn validate_under_transpositions(&self, skew: bool) -> Result<(), usize> {
        for i in 0..self.domain.size {
            let tuple = self.domain.decode(i);
            for s in 0..self.domain.arity.saturating_sub(1) {
                let mut swapped = tuple.clone();
                swapped.swap(s, s + 1);
                let expected = if skew {
                    self.target.inv(self.value(&swapped))
                } else {
                    self.value(&swapped)
                };
                if self.table[i] != expected {
                    return Err(i);
                }
            }
        }
        Ok(())
    }
}

fn sort_with_parity(tuple: &[usize]) -> (Vec<usize>, bool) {
    let mut v = tuple.to_vec();
    let mut swaps = 0usize;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    (v, swaps % 2 == 1)
}

/// A binary operation `G x G -> G` with exhaustively validated flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryPairing {
    name: String,
    group: Arc<FiniteGroup>,
    table: Vec<usize>,
}

impl BinaryPairing {
    pub fn from_fn(
        name: impl Into<String>,
        group: Arc<FiniteGroup>,
        mut f: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let n = group.order();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = f(a, b);
            }
        }
        BinaryPairing {
            name: name.into(),
            group,
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn apply(&self, a: usize, b: usize) -> usize {
        self.table[a * self.group.order() + b]
    }

    /// Group homomorphism in both arguments:
    /// `[a.b, c] = [a,c].[b,c]` and `[a, b.c] = [a,b].[a,c]`.
    pub fn is_bihomomorphism(&self) -> bool {
        let n = self.group.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.apply(self.group.mul(a, b), c);
                    let right = self.group.mul(self.apply(a, c), self.apply(b, c));
                    if left != right {
                        return false;
                    }
                    let left2 = self.apply(a, self.group.mul(b, c));
                    let right2 = self.group.mul(self.apply(a, b), self.apply(a, c));
                    if left2 != right2 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[b,a] = [a,b]^{-1}`.
    pub fn is_skew(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|a| {
            (0..n).all(|b| self.apply(b, a) == self.group.inv(self.apply(a, b)))
        })
    }

    /// `[a,a] = e`.
    pub fn is_alternating(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|a| self.apply(a, a) == self.group.identity())
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|a| (0..n).all(|b| self.apply(a, b) == self.apply(b, a)))
    }

    /// Jacobi identity `[x,[y,z]] . [y,[z,x]] . [z,[x,y]] = e` (additively:
    /// the cyclic sum vanishes).
    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.group.order();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let s = self.group.product(&[
                        self.apply(x, self.apply(y, z)),
                        self.apply(y, self.apply(z, x)),
                        self.apply(z, self.apply(x, y)),
                    ]);
                    if s != self.group.identity() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Ring multiplication on `Z_m`: bihomomorphic and symmetric.
    pub fn ring_multiplication(m: usize) -> Self {
        let group = Arc::new(FiniteGroup::cyclic(m));
        BinaryPairing::from_fn(format!("mult-Z{m}"), group, move |a, b| (a * b) % m)
    }

    /// Heisenberg bracket on `(Z_m)^3`:
    /// `[(a1,a2,a3),(b1,b2,b3)] = (0, 0, a1 b2 - a2 b1)`. Bihomomorphic,
    /// alternating, skew, and a Lie bracket (the image is central).
    pub fn heisenberg(m: usize) -> Self {
        let group = Arc::new(FiniteGroup::from_spec(&format!("Z{m}xZ{m}xZ{m}")).unwrap());
        BinaryPairing::from_fn(format!("heisenberg-Z{m}^3"), group, move |a, b| {
            let (a1, a2) = (a / (m * m), (a / m) % m);
            let (b1, b2) = (b / (m * m), (b / m) % m);
            (a1 * b2 % m + m - a2 * b1 % m) % m
        })
    }

    /// The zero pairing on any group.
    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let e = group.identity();
        BinaryPairing::from_fn("zero", group, move |_, _| e)
    }

    /// Commutator `[a,b] = a b a^{-1} b^{-1}`: skew and alternating on any
    /// group, but a bihomomorphism only when the group is 2-step trivial.
    pub fn commutator(group: Arc<FiniteGroup>) -> Self {
        let g = group.clone();
        BinaryPairing::from_fn("commutator", group, move |a, b| {
            g.product(&[a, b, g.inv(a), g.inv(b)])
        })
    }

    /// The Lie bracket of `sl_2(F_3)` on `(Z_3)^3` in the basis `(e, h, f)`:
    /// `[h,e] = 2e`, `[e,f] = h`, `[h,f] = -2f`. Bihomomorphic, alternating,
    /// satisfies Jacobi, and has non-degenerate double brackets (unlike the
    /// Heisenberg bracket, whose image is central).
    pub fn sl2_mod3() -> Self {
        let group = Arc::new(FiniteGroup::from_spec("Z3xZ3xZ3").unwrap());
        BinaryPairing::from_fn("sl2-F3", group, |a, b| {
            let (a1, a2, a3) = (a / 9, (a / 3) % 3, a % 3);
            let (b1, b2, b3) = (b / 9, (b / 3) % 3, b % 3);
            let e = (2 * (a2 * b1 % 3) + a1 * b2 % 3) % 3; // 2(a2 b1 - a1 b2)
            let h = (a1 * b3 % 3 + 2 * (a3 * b1 % 3)) % 3; // a1 b3 - a3 b1
            let f = (a2 * b3 % 3 + 2 * (a3 * b2 % 3)) % 3; // -2(a2 b3 - a3 b2)
            (e * 3 + h) * 3 + f
        })
    }

    /// Skew bihomomorphism on `Z2 x Z4`:
    /// `[(a1,a2),(b1,b2)] = (0, 2(a1 b2 - a2 b1) mod 4)`.
    pub fn two_torsion_form_z2xz4() -> Self {
        let group = Arc::new(FiniteGroup::from_spec("Z2xZ4").unwrap());
        BinaryPairing::from_fn("skew-Z2xZ4", group, |a, b| {
            let (a1, a2) = (a / 4, a % 4);
            let (b1, b2) = (b / 4, b % 4);
            let v = (a1 * b2 + a2 * b1) % 2; // 2x mod 4 only depends on x mod 2
            2 * v
        })
    }
}
