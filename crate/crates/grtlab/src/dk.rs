//! Drinfeld-Kohno Lie algebras `t_n` as graded quotients of free Lie
//! algebras by the infinitesimal braid relations, with pentagon-residual
//! evaluation living in `t_4`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{RowSpace, SparseVec};
use crate::lyndon::{lyndon_basis, LyndonWord};
use crate::rational::Rat;
use crate::series::{AlgebraError, Alphabet, BracketTable, LieSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DkError {
    #[error("need at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("relation `{0}` is not homogeneous")]
    InhomogeneousRelation(String),
    #[error("series truncation {got} exceeds the algebra truncation {max}")]
    TruncationOverflow { got: usize, max: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Canonical generator name for the pair `{i, j}`, with `i < j` enforced.
pub fn pair_name(i: usize, j: usize) -> String {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    format!("t{a}{b}")
}

/// Generators of `t_n`: `t_ij` for `1 <= i < j <= n`, lexicographic.
pub fn dk_generators(n: usize) -> Result<Vec<String>, DkError> {
    if n < 2 {
        return Err(DkError::TooFewStrands(n));
    }
    let mut names = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            names.push(pair_name(i, j));
        }
    }
    Ok(names)
}

/// The infinitesimal braid relations of `t_n`, homogeneous of degree 2:
/// `[t_ij, t_kl]` for each unordered pair of disjoint pairs, and
/// `[t_ij, t_ik + t_kj]` for each unordered pair `{i,j}` and third index `k`.
pub fn dk_relations(n: usize, max_degree: usize) -> Result<Vec<LieSeries>, DkError> {
    let alphabet = Alphabet::new(dk_generators(n)?);
    let gen = |i: usize, j: usize| {
        LieSeries::generator(alphabet.clone(), max_degree, &pair_name(i, j))
            .expect("generator exists")
    };
    let mut relations = Vec::new();
    if max_degree < 2 {
        return Ok(relations);
    }
    // disjoint pairs, each unordered pair of pairs once
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in i..=n {
                for l in (k + 1)..=n {
                    if (k, l) <= (i, j) {
                        continue;
                    }
                    if k == i || k == j || l == i || l == j {
                        continue;
                    }
                    relations.push(gen(i, j).bracket(&gen(k, l))?);
                }
            }
        }
    }
    // triples: unordered {i,j}, any third k
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in 1..=n {
                if k == i || k == j {
                    continue;
                }
                let sum = gen(i, k).add(&gen(k, j))?;
                relations.push(gen(i, j).bracket(&sum)?);
            }
        }
    }
    // swapping i and j maps [t_ij, t_ik + t_kj] to itself, so each triple
    // relation already appears exactly once per unordered pair
    let mut seen = Vec::new();
    relations.retain(|r| {
        if seen.contains(r) {
            false
        } else {
            seen.push(r.clone());
            true
        }
    });
    Ok(relations)
}

/// Parses a series over the generators of `t_n` (`n <= 9`), accepting
/// `t_ij` with `i > j` and canonicalizing it to `t_ji` first.
pub fn parse_dk(
    text: &str,
    n: usize,
    max_degree: usize,
) -> Result<LieSeries, crate::parse::ParseError> {
    assert!((2..=9).contains(&n), "generator names are single-digit pairs");
    let mut canonical = String::with_capacity(text.len());
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == 't'
            && i + 2 < chars.len()
            && chars[i + 1].is_ascii_digit()
            && chars[i + 2].is_ascii_digit()
            && (i + 3 >= chars.len() || !chars[i + 3].is_alphanumeric())
        {
            let a = chars[i + 1];
            let b = chars[i + 2];
            canonical.push('t');
            if a <= b {
                canonical.push(a);
                canonical.push(b);
            } else {
                canonical.push(b);
                canonical.push(a);
            }
            i += 3;
        } else {
            canonical.push(chars[i]);
            i += 1;
        }
    }
    let alphabet = Alphabet::new(dk_generators(n).expect("n >= 2"));
    crate::parse::parse_series(&canonical, &alphabet, max_degree)
}

/// Coordinates of a quotient element: `(degree, index into the quotient
/// basis of that degree) -> coefficient`, always fully reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientElement {
    coords: BTreeMap<(usize, usize), Rat>,
}

impl QuotientElement {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.coords.iter()
    }
}

/// A graded quotient of a free Lie algebra by homogeneous relations, with
/// per-degree quotient bases and projection maps computed once by exact
/// row reduction.
pub struct PresentedLieAlgebra {
    alphabet: Arc<Alphabet>,
    max_degree: usize,
    relations: Vec<LieSeries>,
    /// Per degree d (index d-1): Lyndon words of degree d, the RREF of the
    /// ideal component in those coordinates, and the non-pivot words that
    /// represent the quotient basis.
    degree_words: Vec<Vec<LyndonWord>>,
    ideal: Vec<RowSpace>,
    quotient_words: Vec<Vec<LyndonWord>>,
}

impl PresentedLieAlgebra {
    /// Builds the quotient, degree by degree. The homogeneous ideal
    /// component `I_d` is generated by bracketing `I_{d-1}` with the
    /// degree-1 generators and the relations with complementary-degree
    /// basis words; saturation is certified afterwards by checking that a
    /// full two-sided sweep does not enlarge any component.
    pub fn build(
        generators: Vec<String>,
        relations: Vec<LieSeries>,
        max_degree: usize,
    ) -> Result<Self, DkError> {
        let alphabet = Alphabet::new(generators);
        let k = alphabet.len() as u8;
        for r in &relations {
            let mut degrees: Vec<usize> = r.terms().map(|(w, _)| w.degree()).collect();
            degrees.dedup();
            if degrees.len() > 1 {
                return Err(DkError::InhomogeneousRelation(r.to_string()));
            }
            if r.max_degree() != max_degree {
                return Err(DkError::TruncationOverflow {
                    got: r.max_degree(),
                    max: max_degree,
                });
            }
            if r.alphabet().as_ref() != alphabet.as_ref() {
                return Err(AlgebraError::AlphabetMismatch(
                    r.alphabet().names().join(","),
                    alphabet.names().join(","),
                )
                .into());
            }
        }

        let degree_words: Vec<Vec<LyndonWord>> =
            (1..=max_degree).map(|d| lyndon_basis(k, d)).collect();
        let word_index: Vec<HashMap<LyndonWord, usize>> = degree_words
            .iter()
            .map(|ws| {
                ws.iter()
                    .enumerate()
                    .map(|(i, w)| (w.clone(), i))
                    .collect()
            })
            .collect();

        let to_sparse = |s: &LieSeries, d: usize| -> SparseVec {
            let mut v: Vec<(usize, Rat)> = s
                .homogeneous_component(d)
                .terms()
                .map(|(w, c)| (word_index[d - 1][w], c.clone()))
                .collect();
            v.sort_by_key(|(c, _)| *c);
            v
        };
        let to_series = |v: &SparseVec, d: usize| -> LieSeries {
            LieSeries::from_terms(
                alphabet.clone(),
                max_degree,
                v.iter()
                    .map(|(c, val)| (degree_words[d - 1][*c].clone(), val.clone())),
            )
        };

        let mut table = BracketTable::new();
        let mut ideal: Vec<RowSpace> = (0..max_degree).map(|_| RowSpace::new()).collect();

        let generator_words: Vec<LyndonWord> =
            (0..k).map(LyndonWord::generator).collect();

        for d in 1..=max_degree {
            // relations of this degree
            for r in &relations {
                let degree = r.terms().next().map(|(w, _)| w.degree());
                if degree == Some(d) {
                    ideal[d - 1].insert(to_sparse(r, d));
                }
            }
            if d >= 2 {
                // [generator, I_{d-1}]
                let prev_rows: Vec<LieSeries> = ideal[d - 2]
                    .rows()
                    .iter()
                    .map(|row| to_series(row, d - 1))
                    .collect();
                for g in &generator_words {
                    for s in &prev_rows {
                        let bracketed = bracket_word_series(g, s, &mut table, max_degree);
                        ideal[d - 1].insert(to_sparse(&bracketed, d));
                    }
                }
                // [relation, basis of complementary degree]
                for r in &relations {
                    let dr = match r.terms().next() {
                        Some((w, _)) => w.degree(),
                        None => continue,
                    };
                    if dr >= d {
                        continue;
                    }
                    for b in &degree_words[d - dr - 1] {
                        let bracketed = bracket_word_series(b, r, &mut table, max_degree);
                        ideal[d - 1].insert(to_sparse(&bracketed, d));
                    }
                }
            }
        }

        // Saturation certificate: one extra two-sided round must not move
        // any rank. This would only fire if the generation strategy above
        // undercounted, so a failure is a hard bug.
        for d in 2..=max_degree {
            let rank = ideal[d - 1].rank();
            for j in 1..d {
                let rows: Vec<LieSeries> = ideal[d - j - 1]
                    .rows()
                    .iter()
                    .map(|row| to_series(row, d - j))
                    .collect();
                for b in &degree_words[j - 1] {
                    for s in &rows {
                        let bracketed = bracket_word_series(b, s, &mut table, max_degree);
                        assert!(
                            !ideal[d - 1].insert(to_sparse(&bracketed, d)),
                            "ideal component at degree {d} was not saturated"
                        );
                    }
                }
            }
            assert_eq!(rank, ideal[d - 1].rank());
        }

        let quotient_words: Vec<Vec<LyndonWord>> = (1..=max_degree)
            .map(|d| {
                let pivots = ideal[d - 1].pivot_columns();
                degree_words[d - 1]
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pivots.binary_search(i).is_err())
                    .map(|(_, w)| w.clone())
                    .collect()
            })
            .collect();

        Ok(PresentedLieAlgebra {
            alphabet,
            max_degree,
            relations,
            degree_words,
            ideal,
            quotient_words,
        })
    }

    /// The Drinfeld-Kohno algebra `t_n` truncated at `max_degree`.
    pub fn drinfeld_kohno(n: usize, max_degree: usize) -> Result<Self, DkError> {
        let generators = dk_generators(n)?;
        let relations = dk_relations(n, max_degree)?;
        Self::build(generators, relations, max_degree)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn relations(&self) -> &[LieSeries] {
        &self.relations
    }

    /// Quotient dimension per degree `1..=max_degree`.
    pub fn dimensions(&self) -> Vec<usize> {
        self.quotient_words.iter().map(|ws| ws.len()).collect()
    }

    /// Spanning elements of the degree-`d` ideal component, as series.
    pub fn ideal_elements(&self, degree: usize) -> Vec<LieSeries> {
        self.ideal[degree - 1]
            .rows()
            .iter()
            .map(|row| {
                LieSeries::from_terms(
                    self.alphabet.clone(),
                    self.max_degree,
                    row.iter().map(|(c, val)| {
                        (self.degree_words[degree - 1][*c].clone(), val.clone())
                    }),
                )
            })
            .collect()
    }

    /// Projects a series onto quotient coordinates.
    pub fn reduce(&self, series: &LieSeries) -> Result<QuotientElement, DkError> {
        if series.alphabet().as_ref() != self.alphabet.as_ref() {
            return Err(AlgebraError::AlphabetMismatch(
                series.alphabet().names().join(","),
                self.alphabet.names().join(","),
            )
            .into());
        }
        if series.max_degree() > self.max_degree {
            return Err(DkError::TruncationOverflow {
                got: series.max_degree(),
                max: self.max_degree,
            });
        }
        let mut coords = BTreeMap::new();
        for d in 1..=self.max_degree {
            let component = series.homogeneous_component(d);
            if component.is_zero() {
                continue;
            }
            let word_index: HashMap<&LyndonWord, usize> = self.degree_words[d - 1]
                .iter()
                .enumerate()
                .map(|(i, w)| (w, i))
                .collect();
            let mut sparse: SparseVec = component
                .terms()
                .map(|(w, c)| (word_index[w], c.clone()))
                .collect();
            sparse.sort_by_key(|(c, _)| *c);
            let reduced = self.ideal[d - 1].reduce(sparse);
            // remainder columns are non-pivot; re-index into quotient basis
            let pivots = self.ideal[d - 1].pivot_columns();
            for (col, val) in reduced {
                let quotient_index = col - pivots.partition_point(|&p| p < col);
                coords.insert((d, quotient_index), val);
            }
        }
        coords.retain(|_, v: &mut Rat| !v.is_zero());
        Ok(QuotientElement { coords })
    }

    /// The canonical lift of a quotient element on its representative words.
    pub fn lift(&self, q: &QuotientElement) -> LieSeries {
        LieSeries::from_terms(
            self.alphabet.clone(),
            self.max_degree,
            q.coords.iter().map(|(&(d, i), c)| {
                (self.quotient_words[d - 1][i].clone(), c.clone())
            }),
        )
    }

    /// Quotient bracket: bracket of canonical lifts, reduced.
    pub fn bracket(
        &self,
        a: &QuotientElement,
        b: &QuotientElement,
    ) -> Result<QuotientElement, DkError> {
        let product = self.lift(a).bracket(&self.lift(b))?;
        self.reduce(&product)
    }

    /// Renders a quotient element as a series on representative words.
    pub fn render(&self, q: &QuotientElement) -> String {
        crate::parse::format_series(&self.lift(q))
    }
}

fn bracket_word_series(
    word: &LyndonWord,
    series: &LieSeries,
    table: &mut BracketTable,
    max_degree: usize,
) -> LieSeries {
    let mut acc: BTreeMap<LyndonWord, Rat> = BTreeMap::new();
    for (v, c) in series.terms() {
        if word.degree() + v.degree() > max_degree {
            continue;
        }
        for (w, k) in table.bracket_words(word, v) {
            let entry = acc.entry(w).or_insert_with(Rat::zero);
            *entry += k * c;
        }
    }
    LieSeries::from_terms(series.alphabet().clone(), series.max_degree(), acc)
}

/// Left minus right side of the pentagon equation evaluated in `t_4`:
/// `phi(t12, t23+t24) + phi(t13+t23, t34) - phi(t23, t34)
///  - phi(t12+t13, t24+t34) - phi(t12, t23)`.
pub fn pentagon_residual(
    t4: &PresentedLieAlgebra,
    phi: &LieSeries,
) -> Result<QuotientElement, DkError> {
    assert_eq!(
        t4.alphabet().names(),
        dk_generators(4).unwrap().as_slice(),
        "pentagon residual lives in t_4"
    );
    if phi.max_degree() > t4.max_degree() {
        return Err(DkError::TruncationOverflow {
            got: phi.max_degree(),
            max: t4.max_degree(),
        });
    }
    let gen = |i: usize, j: usize| {
        LieSeries::generator(t4.alphabet().clone(), t4.max_degree(), &pair_name(i, j))
            .expect("generator exists")
    };
    let eval = |a: LieSeries, b: LieSeries| -> Result<LieSeries, DkError> {
        let mut images = HashMap::new();
        images.insert("x".to_string(), a);
        images.insert("y".to_string(), b);
        Ok(phi.substitute(&images)?)
    };
    let lhs1 = eval(gen(1, 2), gen(2, 3).add(&gen(2, 4))?)?;
    let lhs2 = eval(gen(1, 3).add(&gen(2, 3))?, gen(3, 4))?;
    let rhs1 = eval(gen(2, 3), gen(3, 4))?;
    let rhs2 = eval(gen(1, 2).add(&gen(1, 3))?, gen(2, 4).add(&gen(3, 4))?)?;
    let rhs3 = eval(gen(1, 2), gen(2, 3))?;
    let total = lhs1
        .add(&lhs2)?
        .sub(&rhs1)?
        .sub(&rhs2)?
        .sub(&rhs3)?;
    t4.reduce(&total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grt::sigma3;
    use crate::lyndon::witt_dimension;
    use crate::parse::parse_series;
    use crate::rational::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn relation_counts() {
        assert_eq!(dk_relations(2, 3).unwrap().len(), 0);
        assert_eq!(dk_relations(3, 3).unwrap().len(), 3);
        // 3 disjoint-pair relations plus 12 triple relations
        assert_eq!(dk_relations(4, 3).unwrap().len(), 15);
        assert_eq!(dk_generators(4).unwrap().len(), 6);
        assert_eq!(dk_generators(1).unwrap_err(), DkError::TooFewStrands(1));
    }

    #[test]
    fn disjoint_pair_relations_present_for_t4() {
        let a = Alphabet::new(dk_generators(4).unwrap());
        let rels = dk_relations(4, 2).unwrap();
        for text in ["[t12,t34]", "[t13,t24]", "[t14,t23]"] {
            let r = parse_series(text, &a, 2).unwrap();
            assert!(rels.contains(&r), "missing {text}");
        }
    }

    #[test]
    fn t2_is_free_on_one_generator() {
        let t2 = PresentedLieAlgebra::drinfeld_kohno(2, 4).unwrap();
        assert_eq!(t2.dimensions(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn t3_dimensions_match_center_plus_free_split() {
        let t3 = PresentedLieAlgebra::drinfeld_kohno(3, 5).unwrap();
        let dims = t3.dimensions();
        assert_eq!(&dims[..3], &[3, 1, 2]);
        for d in 1..=5usize {
            let expected = if d == 1 { 1 } else { 0 } + witt_dimension(2, d as u64) as usize;
            assert_eq!(dims[d - 1], expected, "t3 dimension at degree {d}");
        }
    }

    #[test]
    fn t4_degree_one_dimension_is_six() {
        let t4 = PresentedLieAlgebra::drinfeld_kohno(4, 2).unwrap();
        assert_eq!(t4.dimensions()[0], 6);
    }

    #[test]
    fn reduce_kills_relations_and_their_brackets() {
        let t4 = PresentedLieAlgebra::drinfeld_kohno(4, 3).unwrap();
        let a = t4.alphabet().clone();
        let r = parse_series("[t12,t34]", &a, 3).unwrap();
        assert!(t4.reduce(&r).unwrap().is_zero());
        let r2 = parse_series("[t12,t13+t23]", &a, 3).unwrap();
        assert!(t4.reduce(&r2).unwrap().is_zero());
        // canonicalized the other way round: same relation
        let r3 = parse_series("[t12, t23 + t13]", &a, 3).unwrap();
        assert!(t4.reduce(&r3).unwrap().is_zero());
        let g = parse_series("t12", &a, 3).unwrap();
        assert!(!t4.reduce(&g).unwrap().is_zero());
        // bracket of a relation with anything stays zero
        let extra = parse_series("[[t12,t34],t13]", &a, 3).unwrap();
        assert!(t4.reduce(&extra).unwrap().is_zero());
    }

    #[test]
    fn quotient_bracket_is_well_defined() {
        let t4 = PresentedLieAlgebra::drinfeld_kohno(4, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let a = t4.alphabet().clone();
        for _ in 0..4 {
            let f = LieSeries::random(a.clone(), 4, &mut rng).homogeneous_component(2);
            let g = LieSeries::random(a.clone(), 4, &mut rng).homogeneous_component(2);
            let qf = t4.reduce(&f).unwrap();
            let qg = t4.reduce(&g).unwrap();
            let base = t4.bracket(&qf, &qg).unwrap();
            // perturb the lifts by ideal elements
            let ideal2 = t4.ideal_elements(2);
            let pick = |rng: &mut ChaCha8Rng| {
                let idx = rng.gen_range(0..ideal2.len());
                ideal2[idx].scale(&rat(rng.gen_range(-3..=3), 1))
            };
            let f2 = f.add(&pick(&mut rng)).unwrap();
            let g2 = g.add(&pick(&mut rng)).unwrap();
            let perturbed = t4
                .reduce(&f2.bracket(&g2).unwrap())
                .unwrap();
            assert_eq!(base, perturbed);
            // and reducing first gives the same coordinates
            assert_eq!(t4.reduce(&f2).unwrap(), qf);
            assert_eq!(t4.reduce(&g2).unwrap(), qg);
        }
    }

    #[test]
    fn pentagon_examples() {
        let t4 = PresentedLieAlgebra::drinfeld_kohno(4, 3).unwrap();
        let xy = Alphabet::xy();

        // phi = [x,y] collapses to -[t12,t34] - [t13,t24], killed in t4
        let b = parse_series("[x,y]", &xy, 3).unwrap();
        assert!(pentagon_residual(&t4, &b).unwrap().is_zero());

        // phi = x leaves -t12
        let x = parse_series("x", &xy, 3).unwrap();
        let res = pentagon_residual(&t4, &x).unwrap();
        assert_eq!(t4.render(&res), "-t12");

        // sigma3 is pentagon-flat
        let s3 = sigma3(3);
        assert!(pentagon_residual(&t4, &s3).unwrap().is_zero());
    }

    #[test]
    fn pentagon_residual_is_linear() {
        let t4 = PresentedLieAlgebra::drinfeld_kohno(4, 3).unwrap();
        let xy = Alphabet::xy();
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..4 {
            let f = LieSeries::random(xy.clone(), 3, &mut rng);
            let g = LieSeries::random(xy.clone(), 3, &mut rng);
            let c = rat(rng.gen_range(-4..=4), rng.gen_range(1..=4));
            let combined = pentagon_residual(&t4, &f.add(&g.scale(&c)).unwrap()).unwrap();
            let rf = pentagon_residual(&t4, &f).unwrap();
            let rg = pentagon_residual(&t4, &g).unwrap();
            let expected_lift = t4.lift(&rf).add(&t4.lift(&rg).scale(&c)).unwrap();
            assert_eq!(combined, t4.reduce(&expected_lift).unwrap());
        }
    }

    #[test]
    fn parse_canonicalizes_reversed_pairs() {
        let s = parse_dk("[t43,t21]", 4, 2).unwrap();
        let a = Alphabet::new(dk_generators(4).unwrap());
        let expected = parse_series("[t34,t12]", &a, 2).unwrap();
        assert_eq!(s, expected);
        assert!(parse_dk("t99", 4, 2).is_err(), "out-of-range pair");
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let a = vec!["a".to_string(), "b".to_string()];
        let alphabet = Alphabet::new(a.clone());
        let bad = parse_series("a + [a,b]", &alphabet, 3).unwrap();
        assert!(matches!(
            PresentedLieAlgebra::build(a, vec![bad], 3),
            Err(DkError::InhomogeneousRelation(_))
        ));
    }
}
