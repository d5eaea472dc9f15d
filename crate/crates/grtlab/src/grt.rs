//! Operator calculus on the free Lie algebra over `{x, y}`: the
//! substitution operator `alpha`, the hexagon and anti-hexagon projectors,
//! skew-symmetrization, the derivation `D_f`, the Ihara bracket, and the
//! auxiliary mass-shell equation residual.

use std::collections::HashMap;
use std::sync::Arc;

use crate::linalg::RationalKernel;
use crate::lyndon::lyndon_basis;
use crate::rational::{rat, Rat};
use crate::series::{AlgebraError, Alphabet, LieSeries};

fn require_xy(phi: &LieSeries) -> Result<(), AlgebraError> {
    let xy = Alphabet::xy();
    if phi.alphabet().as_ref() != xy.as_ref() {
        return Err(AlgebraError::WrongAlphabet {
            expected: "x,y".to_string(),
            got: phi.alphabet().names().join(","),
        });
    }
    Ok(())
}

fn gen(alphabet: &Arc<Alphabet>, max_degree: usize, name: &str) -> LieSeries {
    LieSeries::generator(alphabet.clone(), max_degree, name).expect("generator exists")
}

/// Substitution images `x -> gx, y -> gy` as a map for [`LieSeries::substitute`].
fn images(gx: LieSeries, gy: LieSeries) -> HashMap<String, LieSeries> {
    let mut m = HashMap::new();
    m.insert("x".to_string(), gx);
    m.insert("y".to_string(), gy);
    m
}

/// `(alpha phi)(x,y) = phi(y, -x-y) + phi(-x-y, x)`.
pub fn alpha(phi: &LieSeries) -> Result<LieSeries, AlgebraError> {
    require_xy(phi)?;
    let a = phi.alphabet().clone();
    let d = phi.max_degree();
    let x = gen(&a, d, "x");
    let y = gen(&a, d, "y");
    let m = x.neg().sub(&y)?; // -x-y
    let first = phi.substitute(&images(y.clone(), m.clone()))?;
    let second = phi.substitute(&images(m, x))?;
    first.add(&second)
}

/// Swaps the two generators: `phi(x,y) -> phi(y,x)`.
pub fn swap(phi: &LieSeries) -> Result<LieSeries, AlgebraError> {
    require_xy(phi)?;
    let a = phi.alphabet().clone();
    let d = phi.max_degree();
    phi.substitute(&images(gen(&a, d, "y"), gen(&a, d, "x")))
}

/// Hexagon projector `H = (2 id - alpha)/3`; its image is exactly the
/// solution set of `phi + alpha phi = 0`.
pub fn hexagon_project(phi: &LieSeries) -> Result<LieSeries, AlgebraError> {
    let a = alpha(phi)?;
    Ok(phi.scale(&rat(2, 3)).sub(&a.scale(&rat(1, 3)))?)
}

/// Anti-hexagon projector `A = (id + alpha)/3`; complementary to `H`, its
/// image solves `phi - (alpha phi)/2 = 0`.
pub fn antihexagon_project(phi: &LieSeries) -> Result<LieSeries, AlgebraError> {
    let a = alpha(phi)?;
    Ok(phi.add(&a)?.scale(&rat(1, 3)))
}

/// `phi + alpha phi`; zero exactly on hexagon solutions.
pub fn hexagon_residual(phi: &LieSeries) -> Result<LieSeries, AlgebraError> {
    phi.add(&alpha(phi)?)
}

/// Residual of the anti-hexagon equation `phi - (alpha phi)/2`.
pub fn antihexagon_residual(phi: &LieSeries) -> Result<LieSeries, AlgebraError> {
    phi.sub(&alpha(phi)?.scale(&rat(1, 2)))
}

/// `(id + beta alpha) . (id + lambda alpha)` applied to `phi`. As operators
/// this equals `(1 + 2 lambda beta) id + (lambda + beta + lambda beta) alpha`.
pub fn lambda_compose(
    lambda: &Rat,
    beta: &Rat,
    phi: &LieSeries,
) -> Result<LieSeries, AlgebraError> {
    let inner = phi.add(&alpha(phi)?.scale(lambda))?;
    inner.add(&alpha(&inner)?.scale(beta))
}

/// `(phi - phi(y,x))/2`; the output changes sign under the swap.
pub fn skew_symmetrize(phi: &LieSeries) -> Result<LieSeries, AlgebraError> {
    Ok(phi.sub(&swap(phi)?)?.scale(&rat(1, 2)))
}

/// The derivation `D_f` with `D_f(x) = 0`, `D_f(y) = [y, f]`, applied to `g`.
pub fn derivation_apply(f: &LieSeries, g: &LieSeries) -> Result<LieSeries, AlgebraError> {
    require_xy(f)?;
    require_xy(g)?;
    let a = f.alphabet().clone();
    let d = f.max_degree();
    let y = gen(&a, d, "y");
    let mut values = HashMap::new();
    values.insert("x".to_string(), LieSeries::zero(a.clone(), d));
    values.insert("y".to_string(), y.bracket(f)?);
    g.derive(&values)
}

/// Ihara bracket `{f,g} = [f,g] + D_f(g) - D_g(f)`.
pub fn ihara_bracket(f: &LieSeries, g: &LieSeries) -> Result<LieSeries, AlgebraError> {
    let fg = f.bracket(g)?;
    let dfg = derivation_apply(f, g)?;
    let dgf = derivation_apply(g, f)?;
    fg.add(&dfg)?.sub(&dgf)
}

/// Residual of `[y, phi(x,y)] + [z, phi(x,z)]` on the mass shell
/// `x + y + z = 0`, i.e. with `z = -x-y` eliminated.
pub fn eq3_residual(phi: &LieSeries) -> Result<LieSeries, AlgebraError> {
    require_xy(phi)?;
    let a = phi.alphabet().clone();
    let d = phi.max_degree();
    let x = gen(&a, d, "x");
    let y = gen(&a, d, "y");
    let z = x.neg().sub(&y)?;
    let phi_xz = phi.substitute(&images(x, z.clone()))?;
    y.bracket(phi)?.add(&z.bracket(&phi_xz)?)
}

/// The degree-3 generator `[x,[x,y]] - [y,[y,x]]`: skew, hexagon-flat and
/// flat for the mass-shell equation (pentagon-flatness is checked in the
/// Drinfeld-Kohno layer).
pub fn sigma3(max_degree: usize) -> LieSeries {
    assert!(max_degree >= 3);
    crate::parse::parse_series("[x,[x,y]] - [y,[y,x]]", &Alphabet::xy(), max_degree)
        .expect("fixed expression parses")
}

/// The degree-5 generator, constructed as the one-dimensional joint kernel
/// of {skew-symmetry, hexagon, mass-shell equation} on the degree-5
/// component, normalized to leading coefficient 1 on the first basis word.
pub fn sigma5(max_degree: usize) -> LieSeries {
    assert!(max_degree >= 5);
    let solutions = solve_degree_constraints(5, max_degree);
    assert_eq!(
        solutions.len(),
        1,
        "degree-5 joint solution space must be one-dimensional"
    );
    solutions.into_iter().next().unwrap()
}

/// Basis of the space of degree-`degree` series that are skew, hexagon-flat
/// and mass-shell-flat, by exact row reduction of the joint constraint
/// system over the degree-`degree` Lyndon basis sweep. Each solution is
/// normalized to leading coefficient 1.
pub fn solve_degree_constraints(degree: usize, max_degree: usize) -> Vec<LieSeries> {
    let a = Alphabet::xy();
    let words = lyndon_basis(2, degree);
    let n = words.len();

    // Constraint rows: the images of each basis element under the three
    // residual operators, with output coordinates indexed per operator.
    // The mass-shell residual raises the degree by one, so the constraints
    // are computed at a working truncation of degree + 1.
    let working_degree = degree + 1;
    let basis_series: Vec<LieSeries> = words
        .iter()
        .map(|w| {
            LieSeries::from_terms(a.clone(), working_degree, [(w.clone(), rat(1, 1))])
        })
        .collect();

    let residuals: Vec<Vec<LieSeries>> = basis_series
        .iter()
        .map(|b| {
            vec![
                b.sub(&skew_symmetrize(b).unwrap()).unwrap(), // zero iff skew
                hexagon_residual(b).unwrap(),
                eq3_residual(b).unwrap(),
            ]
        })
        .collect();

    // Collect all output words per residual slot to index constraint rows.
    let mut kernel = RationalKernel::new(n);
    let mut output_words: Vec<std::collections::BTreeSet<crate::lyndon::LyndonWord>> =
        vec![Default::default(); 3];
    for per_basis in &residuals {
        for (slot, r) in per_basis.iter().enumerate() {
            for (w, _) in r.terms() {
                output_words[slot].insert(w.clone());
            }
        }
    }
    for (slot, words_out) in output_words.iter().enumerate() {
        for w in words_out {
            let row: Vec<Rat> = residuals
                .iter()
                .map(|per_basis| per_basis[slot].coefficient(w))
                .collect();
            kernel.add_constraint(row);
        }
    }

    kernel
        .basis()
        .into_iter()
        .map(|coeffs| {
            LieSeries::from_terms(
                a.clone(),
                max_degree,
                words.iter().cloned().zip(coeffs),
            )
        })
        .collect()
}
