//! Cayley-table groups: the finite carriers for all brute-force
//! verification sweeps.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("bad group spec `{0}`")]
    BadSpec(String),
    #[error("table is not square")]
    MalformedTable,
}

/// A finite group given by its Cayley table. The constructor validates the
/// full associativity, identity and inverse laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<usize>, // row-major |G| x |G|
    identity: usize,
    inverse: Vec<usize>,
    abelian: bool,
}

impl FiniteGroup {
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let n = labels.len();
        if table.len() != n * n || table.iter().any(|&v| v >= n) {
            return Err(GroupError::MalformedTable);
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or(GroupError::NoInverse(a))?;
        }
        let abelian = (0..n).all(|a| (0..n).all(|b| mul(a, b) == mul(b, a)));
        Ok(FiniteGroup {
            name: name.into(),
            labels,
            table,
            identity,
            inverse,
            abelian,
        })
    }

    /// Cyclic group of order `m`, additive labels `0..m`.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        let labels = (0..m).map(|i| i.to_string()).collect();
        let mut table = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                table[a * m + b] = (a + b) % m;
            }
        }
        FiniteGroup::from_table(format!("Z{m}"), labels, table).expect("cyclic table is a group")
    }

    /// Direct product `A x B`, elements ordered `(a, b) -> a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let na = a.order();
        let nb = b.order();
        let n = na * nb;
        let mut labels = Vec::with_capacity(n);
        for i in 0..na {
            for j in 0..nb {
                labels.push(format!("({},{})", a.labels[i], b.labels[j]));
            }
        }
        let mut table = vec![0; n * n];
        for i1 in 0..na {
            for j1 in 0..nb {
                for i2 in 0..na {
                    for j2 in 0..nb {
                        let x = i1 * nb + j1;
                        let y = i2 * nb + j2;
                        table[x * n + y] = a.mul(i1, i2) * nb + b.mul(j1, j2);
                    }
                }
            }
        }
        FiniteGroup::from_table(format!("{}x{}", a.name, b.name), labels, table)
            .expect("product table is a group")
    }

    /// Symmetric group on `n <= 4` letters, elements being permutations in
    /// lexicographic one-line order, composed left-to-right: `(p*q)(i) = q(p(i))`.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=4).contains(&n), "only small symmetric groups");
        let perms = permutations(n);
        let count = perms.len();
        let index_of = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let labels = perms
            .iter()
            .map(|p| {
                p.iter()
                    .map(|v| (v + 1).to_string())
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect();
        let mut table = vec![0; count * count];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..n).map(|k| q[p[k]]).collect();
                table[i * count + j] = index_of(&composed);
            }
        }
        FiniteGroup::from_table(format!("S{n}"), labels, table).expect("S_n table is a group")
    }

    /// Parses the test mini-language: `Z6`, `Z2xZ3`, `S3`, `S4`, and
    /// products such as `Z2xZ4` or `Z3xZ3xZ3`.
    pub fn from_spec(spec: &str) -> Result<Self, GroupError> {
        let parts: Vec<&str> = spec.split('x').collect();
        let mut group: Option<FiniteGroup> = None;
        for part in parts {
            let p = part.trim();
            let next = if let Some(m) = p.strip_prefix('Z') {
                let m: usize = m
                    .parse()
                    .map_err(|_| GroupError::BadSpec(spec.to_string()))?;
                if m == 0 {
                    return Err(GroupError::BadSpec(spec.to_string()));
                }
                FiniteGroup::cyclic(m)
            } else if let Some(m) = p.strip_prefix('S') {
                let m: usize = m
                    .parse()
                    .map_err(|_| GroupError::BadSpec(spec.to_string()))?;
                if !(1..=4).contains(&m) {
                    return Err(GroupError::BadSpec(spec.to_string()));
                }
                FiniteGroup::symmetric(m)
            } else {
                return Err(GroupError::BadSpec(spec.to_string()));
            };
            group = Some(match group {
                None => next,
                Some(g) => FiniteGroup::direct_product(&g, &next),
            });
        }
        group.ok_or_else(|| GroupError::BadSpec(spec.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Smallest `e >= 1` with `e * g = 0` for all `g` (additively spoken).
    pub fn exponent(&self) -> usize {
        let mut e = 1usize;
        for a in 0..self.order() {
            let mut order = 1;
            let mut acc = a;
            while acc != self.identity {
                acc = self.mul(acc, a);
                order += 1;
            }
            e = num_integer::lcm(e, order);
        }
        e
    }

    /// Product `a_1 ... a_k` left to right; identity for the empty slice.
    pub fn product(&self, elements: &[usize]) -> usize {
        elements
            .iter()
            .fold(self.identity, |acc, &x| self.mul(acc, x))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out.sort();
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(z6.order(), 6);
        assert!(z6.is_abelian());
        assert_eq!(z6.identity(), 0);
        assert_eq!(z6.mul(4, 5), 3);
        assert_eq!(z6.inv(2), 4);
        assert_eq!(z6.exponent(), 6);
    }

    #[test]
    fn symmetric_group_s3() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.exponent(), 6);
        // every element times its inverse is the identity
        for a in 0..6 {
            assert_eq!(s3.mul(a, s3.inv(a)), s3.identity());
        }
    }

    #[test]
    fn s4_is_a_group() {
        let s4 = FiniteGroup::symmetric(4);
        assert_eq!(s4.order(), 24);
        assert!(!s4.is_abelian());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(FiniteGroup::from_spec("Z6").unwrap().order(), 6);
        let p = FiniteGroup::from_spec("Z2xZ3").unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        assert_eq!(FiniteGroup::from_spec("S3").unwrap().order(), 6);
        assert_eq!(FiniteGroup::from_spec("Z3xZ3xZ3").unwrap().order(), 27);
        assert!(FiniteGroup::from_spec("Q8").is_err());
        assert!(FiniteGroup::from_spec("Z0").is_err());
    }

    #[test]
    fn bad_table_rejected() {
        // left-identity only: 2-element table that is not a group
        let err = FiniteGroup::from_table(
            "bad",
            vec!["a".into(), "b".into()],
            vec![0, 1, 0, 1],
        );
        assert!(err.is_err());
    }
}
