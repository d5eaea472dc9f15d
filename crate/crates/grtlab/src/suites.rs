//! Packaged verification suites: each runs one proposition's exhaustive or
//! seeded-random checks and returns a deterministic [`LabReport`]. Both the
//! CLI lab subcommands and the acceptance tests drive these.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};
use crate::group_lab::{self, LabError, Symmetry};
use crate::grt;
use crate::nary::{BinaryPairing, NaryError, NaryMap};
use crate::rational::{rat, Rat};
use crate::report::{LabReport, SweepReport};
use crate::series::{Alphabet, LieSeries};
use crate::torsor::{self, GammaSign, TorsorTable};

/// Configuration problems (bad spec strings, unsuitable groups); genuine
/// check failures are reported inside the [`LabReport`] instead.
#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Nary(#[from] NaryError),
    #[error("unsuitable configuration: {0}")]
    Lab(#[from] LabError),
    #[error(transparent)]
    Torsor(#[from] torsor::TorsorError),
    #[error("{0}")]
    Config(String),
}

fn sweep(
    construction: &str,
    group: &str,
    arity: usize,
    points_checked: u64,
    violations: Vec<String>,
) -> SweepReport {
    SweepReport {
        construction: construction.to_string(),
        group: group.to_string(),
        arity,
        points_checked,
        violations,
    }
}

/// Projector algebra on the free Lie algebra over `{x,y}`: idempotence,
/// complementarity, the `alpha` quadratic relation, the lambda-composition
/// identity, and compatibility with skew-symmetrization, all exact on
/// seeded random series.
pub fn projector_suite(seed: u64, count: usize, max_degree: usize) -> LabReport {
    let a = Alphabet::xy();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations_proj = Vec::new();
    let mut violations_alpha = Vec::new();
    let mut violations_skew = Vec::new();
    let mut violations_residual = Vec::new();

    for i in 0..count {
        let phi = LieSeries::random(a.clone(), max_degree, &mut rng);
        let h = grt::hexagon_project(&phi).unwrap();
        let anti = grt::antihexagon_project(&phi).unwrap();
        if grt::hexagon_project(&h).unwrap() != h {
            violations_proj.push(format!("H not idempotent on sample {i}"));
        }
        if grt::antihexagon_project(&anti).unwrap() != anti {
            violations_proj.push(format!("A not idempotent on sample {i}"));
        }
        if h.add(&anti).unwrap() != phi {
            violations_proj.push(format!("H + A != id on sample {i}"));
        }
        if !grt::hexagon_project(&anti).unwrap().is_zero()
            || !grt::antihexagon_project(&h).unwrap().is_zero()
        {
            violations_proj.push(format!("HA or AH != 0 on sample {i}"));
        }
        if !grt::hexagon_residual(&h).unwrap().is_zero() {
            violations_residual.push(format!("hexagon residual of H phi != 0 on sample {i}"));
        }
        if !grt::antihexagon_residual(&anti).unwrap().is_zero() {
            violations_residual.push(format!("anti-hexagon equation fails for A phi on sample {i}"));
        }

        let alpha2 = grt::alpha(&grt::alpha(&phi).unwrap()).unwrap();
        let expected = phi.scale(&rat(2, 1)).add(&grt::alpha(&phi).unwrap()).unwrap();
        if alpha2 != expected {
            violations_alpha.push(format!("alpha^2 != 2 id + alpha on sample {i}"));
        }

        let hs = grt::hexagon_project(&grt::skew_symmetrize(&phi).unwrap()).unwrap();
        let sh = grt::skew_symmetrize(&grt::hexagon_project(&phi).unwrap()).unwrap();
        if hs != sh {
            violations_skew.push(format!("H and skew-symmetrization do not commute on sample {i}"));
        }
    }

    let mut violations_compose = Vec::new();
    let compose_pairs = 20;
    for i in 0..compose_pairs {
        let lambda = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        let beta = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        let phi = LieSeries::random(a.clone(), max_degree, &mut rng);
        let lhs = grt::lambda_compose(&lambda, &beta, &phi).unwrap();
        let id_coeff = rat(1, 1) + rat(2, 1) * &lambda * &beta;
        let alpha_coeff = &lambda + &beta + &lambda * &beta;
        let rhs = phi
            .scale(&id_coeff)
            .add(&grt::alpha(&phi).unwrap().scale(&alpha_coeff))
            .unwrap();
        if lhs != rhs {
            violations_compose.push(format!(
                "composition identity fails for (lambda, beta) pair {i}"
            ));
        }
        let lam2: Rat = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        let phi_lambda = phi
            .add(&grt::alpha(&phi).unwrap().scale(&lam2))
            .unwrap();
        let lhs_r = grt::hexagon_residual(&phi_lambda).unwrap();
        let rhs_r = grt::hexagon_residual(&phi)
            .unwrap()
            .scale(&(rat(1, 1) + rat(2, 1) * &lam2));
        if lhs_r != rhs_r {
            violations_compose.push(format!("residual scaling fails for pair {i}"));
        }
    }

    LabReport {
        proposition: "prop1".to_string(),
        seed,
        sweeps: vec![
            sweep("projector-algebra", "lie2", 0, count as u64, violations_proj),
            sweep("projector-residuals", "lie2", 0, count as u64, violations_residual),
            sweep("alpha-quadratic-relation", "lie2", 0, count as u64, violations_alpha),
            sweep("skew-compatibility", "lie2", 0, count as u64, violations_skew),
            sweep(
                "lambda-composition",
                "lie2",
                0,
                compose_pairs as u64,
                violations_compose,
            ),
        ],
    }
}

/// The Z3-set hexagon construction on `X = G_s^2` with the order-three
/// cycle map, solved for seeded random maps into the target group.
pub fn z3_hexagon_suite(
    source_spec: &str,
    target_spec: &str,
    seed: u64,
    maps: usize,
) -> Result<LabReport, SuiteError> {
    let source = FiniteGroup::from_spec(source_spec)?;
    let target = FiniteGroup::from_spec(target_spec)?;
    let f = group_lab::z3_cycle_on_pairs(&source);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for m in 0..maps {
        let phi: Vec<usize> = (0..f.len()).map(|_| rng.gen_range(0..target.order())).collect();
        match group_lab::z3_hexagon_solve(&f, &phi, &target) {
            Ok(sol) => {
                if let Some(x) = group_lab::z3_hexagon_residual(&f, &sol, &target) {
                    violations.push(format!("map {m}: residual at point {x}"));
                }
            }
            Err(e) => violations.push(format!("map {m}: {e}")),
        }
    }
    Ok(LabReport {
        proposition: "prop-bh".to_string(),
        seed,
        sweeps: vec![sweep(
            "z3-hexagon-construction",
            &format!("{source_spec}^2 -> {target_spec}"),
            2,
            (2 * f.len() * maps) as u64,
            violations,
        )],
    })
}

/// N-ary hexagon/anti-hexagon solutions for random symmetric and skew maps
/// between abelian groups, verified exhaustively.
pub fn nary_hexagon_suite(
    source_spec: &str,
    target_spec: &str,
    arity: usize,
    seed: u64,
) -> Result<LabReport, SuiteError> {
    let source = Arc::new(FiniteGroup::from_spec(source_spec)?);
    let target = Arc::new(FiniteGroup::from_spec(target_spec)?);
    if !source.is_abelian() || !target.is_abelian() {
        return Err(SuiteError::Config(
            "the n-ary hexagon construction needs abelian source and target".to_string(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sweeps = Vec::new();
    for (symmetry, tag) in [(Symmetry::Symmetric, "symmetric"), (Symmetry::Skew, "skew")] {
        let phi = match symmetry {
            Symmetry::Symmetric => {
                NaryMap::random_symmetric(source.clone(), arity, target.clone(), &mut rng)?
            }
            Symmetry::Skew => {
                NaryMap::random_skew(source.clone(), arity, target.clone(), &mut rng)?
            }
        };
        let mut violations = Vec::new();
        let mut points = 0u64;
        match group_lab::nary_hexagon_solve(&phi, symmetry) {
            Ok((hexagon, antihexagon)) => {
                points = 2 * phi.domain().size as u64;
                if let Some(x) = group_lab::nary_hexagon_residual(&hexagon, symmetry) {
                    violations.push(format!("hexagon residual at point {x}"));
                }
                if let Some(x) =
                    group_lab::nary_antihexagon_residual(&antihexagon, symmetry)
                {
                    violations.push(format!("anti-hexagon residual at point {x}"));
                }
            }
            Err(e) => violations.push(e.to_string()),
        }
        sweeps.push(sweep(
            &format!("nary-hexagon-{tag}"),
            &format!("{source_spec} -> {target_spec}"),
            arity,
            points,
            violations,
        ));
    }
    Ok(LabReport {
        proposition: "prop-gh".to_string(),
        seed,
        sweeps,
    })
}

/// `P^{n+1} = id` and the closed-form iterates for all arities up to
/// `max_arity`.
pub fn cycle_suite(group_spec: &str, max_arity: usize) -> Result<LabReport, SuiteError> {
    let group = FiniteGroup::from_spec(group_spec)?;
    let mut sweeps = Vec::new();
    for n in 1..=max_arity {
        let (violations, points) = match group_lab::cycle_rep_p(&group, n) {
            Ok((_, cert)) => (Vec::new(), cert.points_checked),
            Err(e) => (vec![e.to_string()], 0),
        };
        sweeps.push(sweep("cycle-iterates", group_spec, n, points, violations));
    }
    Ok(LabReport {
        proposition: "prop-gh-cycle".to_string(),
        seed: 0,
        sweeps,
    })
}

/// Coefficient solutions `sum a_i (phi . P^i)` for seeded random integer
/// vectors with zero sum.
pub fn coefficient_suite(
    group_spec: &str,
    arity: usize,
    seed: u64,
    vectors: usize,
) -> Result<LabReport, SuiteError> {
    let group = Arc::new(FiniteGroup::from_spec(group_spec)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi = NaryMap::random(group.clone(), arity, group.clone(), &mut rng)?;
    let mut violations = Vec::new();
    let mut points = 0u64;
    for v in 0..vectors {
        let mut coeffs: Vec<i64> = (0..arity).map(|_| rng.gen_range(-5..=5)).collect();
        let sum: i64 = coeffs.iter().sum();
        coeffs.push(-sum);
        match group_lab::coefficient_solve(&phi, &coeffs) {
            Ok(_) => points += phi.domain().size as u64,
            Err(e) => violations.push(format!("vector {v} {coeffs:?}: {e}")),
        }
    }
    Ok(LabReport {
        proposition: "prop-gh-coefficients".to_string(),
        seed,
        sweeps: vec![sweep(
            "cyclic-coefficient-solutions",
            group_spec,
            arity,
            points,
            violations,
        )],
    })
}

/// Skew-symmetrization and the parity constructions on a (possibly
/// non-abelian) group.
pub fn skew_parity_suite(group_spec: &str, seed: u64) -> Result<LabReport, SuiteError> {
    let group = Arc::new(FiniteGroup::from_spec(group_spec)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi = NaryMap::random(group.clone(), 2, group.clone(), &mut rng)?;
    let mut sweeps = Vec::new();

    let violations = match group_lab::skew_solve(&phi) {
        Ok(_) => Vec::new(),
        Err(e) => vec![e.to_string()],
    };
    sweeps.push(sweep(
        "skew-symmetrization",
        group_spec,
        2,
        phi.domain().size as u64,
        violations,
    ));

    for slots in [vec![], vec![0], vec![0, 1]] {
        let violations = match group_lab::parity_solve(&phi, &slots) {
            Ok(_) => Vec::new(),
            Err(e) => vec![e.to_string()],
        };
        sweeps.push(sweep(
            &format!("parity-construction-M={slots:?}"),
            group_spec,
            2,
            phi.domain().size as u64,
            violations,
        ));
    }

    let unary: Vec<usize> = (0..group.order()).map(|_| rng.gen_range(0..group.order())).collect();
    let violations = match group_lab::inverse_parity_solve(&unary, &group) {
        Ok(_) => Vec::new(),
        Err(e) => vec![e.to_string()],
    };
    sweeps.push(sweep(
        "inverse-parity",
        group_spec,
        1,
        group.order() as u64,
        violations,
    ));

    Ok(LabReport {
        proposition: "skew-parity".to_string(),
        seed,
        sweeps,
    })
}

/// The linear differential: square-zero, additivity, parity conservation
/// (arity 2) and the symmetric slot-formula cross-check, with the ring
/// pairing on `Z_m`.
pub fn diff_1d_suite(modulus: usize, arity: usize, seed: u64) -> Result<LabReport, SuiteError> {
    let pairing = BinaryPairing::ring_multiplication(modulus);
    let g = pairing.group().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = NaryMap::random(g.clone(), arity, g.clone(), &mut rng)?;
    let mut sweeps = Vec::new();
    let group_name = format!("Z{modulus}");

    let d = group_lab::diff_1d(&psi, &pairing)?;
    let dd = group_lab::diff_1d(&d, &pairing)?;
    let violations = match group_lab::nonidentity_point(&dd) {
        None => Vec::new(),
        Some(x) => vec![format!("d^2 psi != 0 at point {x}")],
    };
    sweeps.push(sweep("diff1d-square-zero", &group_name, arity, dd.domain().size as u64, violations));

    let other = NaryMap::random(g.clone(), arity, g.clone(), &mut rng)?;
    let d_sum = group_lab::diff_1d(&psi.pointwise_mul(&other), &pairing)?;
    let sum_d = group_lab::diff_1d(&psi, &pairing)?
        .pointwise_mul(&group_lab::diff_1d(&other, &pairing)?);
    let violations = if d_sum == sum_d {
        Vec::new()
    } else {
        vec!["differential is not additive".to_string()]
    };
    sweeps.push(sweep("diff1d-additivity", &group_name, arity, d_sum.domain().size as u64, violations));

    let sym = NaryMap::random_symmetric(g.clone(), arity, g.clone(), &mut rng)?;
    let via_iterates = group_lab::diff_1d(&sym, &pairing)?;
    let via_slots = group_lab::diff_1d_slot_formula(&sym, &pairing)?;
    let mut violations = Vec::new();
    if via_iterates != via_slots {
        violations.push("slot formula deviates from f-iterate formula".to_string());
    }
    if via_iterates.validate_symmetric().is_err() {
        violations.push("differential of a symmetric map is not symmetric".to_string());
    }
    sweeps.push(sweep("diff1d-symmetric-restriction", &group_name, arity, via_iterates.domain().size as u64, violations));

    if arity == 2 {
        let skew = NaryMap::random_skew(g.clone(), 2, g.clone(), &mut rng)?;
        let d_skew = group_lab::diff_1d(&skew, &pairing)?;
        let violations = match d_skew.validate_skew() {
            Ok(()) => Vec::new(),
            Err(e) => vec![e.to_string()],
        };
        sweeps.push(sweep("diff1d-parity-conservation", &group_name, 2, d_skew.domain().size as u64, violations));
    }

    Ok(LabReport {
        proposition: "prop-1d".to_string(),
        seed,
        sweeps,
    })
}

/// The non-linear differential with the alternating Heisenberg pairing on
/// `(Z_m)^3`: square-zero and f-invariance of the output.
pub fn diff_2d_suite(modulus: usize, seed: u64) -> Result<LabReport, SuiteError> {
    let pairing = BinaryPairing::heisenberg(modulus);
    let g = pairing.group().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = NaryMap::random(g.clone(), 2, g.clone(), &mut rng)?;
    let group_name = format!("(Z{modulus})^3");

    let d = group_lab::diff_2d(&psi, &pairing)?;
    let dd = group_lab::diff_2d(&d, &pairing)?;
    let mut violations = match group_lab::nonidentity_point(&dd) {
        None => Vec::new(),
        Some(x) => vec![format!("d^2 psi != 0 at point {x}")],
    };
    let p = group_lab::cycle_p_table(&g, 2)?;
    if d.precompose(&p) != d {
        violations.push("output not invariant under the hexagon map".to_string());
    }
    Ok(LabReport {
        proposition: "prop-2d".to_string(),
        seed,
        sweeps: vec![sweep(
            "diff2d-square-zero",
            &group_name,
            2,
            2 * dd.domain().size as u64,
            violations,
        )],
    })
}

/// The square-e differential under the validated skew bihomomorphism on
/// `Z2 x Z4`, plus the abelian-image identity over all triples.
pub fn diff_3d_suite(seed: u64) -> Result<LabReport, SuiteError> {
    let pairing = BinaryPairing::two_torsion_form_z2xz4();
    let g = pairing.group().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = NaryMap::random(g.clone(), 2, g.clone(), &mut rng)?;

    let d = group_lab::diff_3d(&psi, &pairing)?;
    let dd = group_lab::diff_3d(&d, &pairing)?;
    let violations = match group_lab::nonidentity_point(&dd) {
        None => Vec::new(),
        Some(x) => vec![format!("d^2 psi != e at point {x}")],
    };
    let abelian_violations = if group_lab::abelian_image_identity_holds(&pairing) {
        Vec::new()
    } else {
        vec!["[a,c][b,c] != [b,c][a,c] somewhere".to_string()]
    };
    Ok(LabReport {
        proposition: "prop-3d".to_string(),
        seed,
        sweeps: vec![
            sweep("diff3d-square-e", "Z2xZ4", 2, dd.domain().size as u64, violations),
            sweep(
                "abelian-image-identity",
                "Z2xZ4",
                3,
                (g.order() * g.order() * g.order()) as u64,
                abelian_violations,
            ),
        ],
    })
}

/// Torsor gamma solutions: axioms, f-map certificate with the Klein-four
/// report, and equation (6) for all four gamma variants.
pub fn torsor_gamma_suite(
    torsor: &TorsorTable,
    target_spec: &str,
    seed: u64,
) -> Result<LabReport, SuiteError> {
    let torsor_name = torsor.name().to_string();
    let target = FiniteGroup::from_spec(target_spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sweeps = Vec::new();

    let maps = torsor::f_maps(torsor)?;
    let mut violations = Vec::new();
    if torsor.is_abelian() && !maps.klein_four_holds {
        violations.push("Klein four-group relations fail on an abelian torsor".to_string());
    }
    sweeps.push(sweep(
        &format!("f-maps (klein_four_holds={})", maps.klein_four_holds),
        &torsor_name,
        3,
        maps.points_checked,
        violations,
    ));

    let size = torsor.order().pow(3);
    let phi: Vec<usize> = (0..size).map(|_| rng.gen_range(0..target.order())).collect();
    for (sign, tag) in [(GammaSign::Minus, "gamma-minus"), (GammaSign::Plus, "gamma-plus")] {
        let mut violations = Vec::new();
        match torsor::gamma_solve(&phi, torsor, &target, sign) {
            Ok(gamma) => {
                let tilde: Vec<usize> = gamma.iter().map(|&v| target.inv(v)).collect();
                if let Some(x) = torsor::gamma_equation_residual(&tilde, &maps, &target) {
                    violations.push(format!("tilde variant residual at triple {x}"));
                }
            }
            Err(e) => violations.push(e.to_string()),
        }
        sweeps.push(sweep(
            tag,
            &format!("{torsor_name} -> {target_spec}"),
            3,
            2 * size as u64,
            violations,
        ));
    }
    Ok(LabReport {
        proposition: "torsor-gamma".to_string(),
        seed,
        sweeps,
    })
}

/// Torsor differential: square-e under a skew bihomomorphism, plus the
/// f1/f2 bookkeeping identity.
pub fn torsor_diff_suite(
    torsor: &TorsorTable,
    modulus: usize,
    seed: u64,
) -> Result<LabReport, SuiteError> {
    let torsor_name = torsor.name().to_string();
    let pairing = BinaryPairing::heisenberg(modulus);
    let g = pairing.group().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = torsor.order().pow(3);
    let phi: Vec<usize> = (0..size).map(|_| rng.gen_range(0..g.order())).collect();

    let d = torsor::torsor_diff(&phi, torsor, &pairing)?;
    let dd = torsor::torsor_diff(&d, torsor, &pairing)?;
    let mut violations = Vec::new();
    if let Some(x) = dd.iter().position(|&v| v != g.identity()) {
        violations.push(format!("d^2 phi != e at triple {x}"));
    }
    let maps = torsor::f_maps(torsor)?;
    for i in 0..d.len() {
        if d[maps.f1[i]] != g.inv(d[maps.f2[i]]) {
            violations.push(format!("d phi . f1 != (d phi . f2)^-1 at triple {i}"));
            break;
        }
    }
    Ok(LabReport {
        proposition: "torsor-diff".to_string(),
        seed,
        sweeps: vec![sweep(
            "torsor-differential-square-e",
            &format!("{torsor_name}, heisenberg-Z{modulus}^3"),
            3,
            2 * size as u64,
            violations,
        )],
    })
}

/// The gamma-twisted differential on a torsor from `Z_3` with the
/// Heisenberg pairing: square-zero for both signs, the output constraint,
/// and the modified Leibniz rule in both displayed forms.
pub fn gamma_diff_suite(torsor: &TorsorTable, seed: u64) -> Result<LabReport, SuiteError> {
    let torsor_name = torsor.name().to_string();
    let pairing = BinaryPairing::heisenberg(3);
    let g = pairing.group().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = torsor.order().pow(3);
    let random = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        (0..size).map(|_| rng.gen_range(0..g.order())).collect()
    };

    let phi0 = random(&mut rng);
    let gamma = torsor::canonical_gamma(&phi0, torsor, &g)?;
    let maps = torsor::f_maps(torsor)?;
    let mut sweeps = Vec::new();

    for (sign, tag) in [(GammaSign::Plus, "plus"), (GammaSign::Minus, "minus")] {
        let phi = random(&mut rng);
        let mut violations = Vec::new();
        match torsor::gamma_diff(&gamma, &phi, torsor, &pairing, sign) {
            Ok(d) => {
                for i in 0..d.len() {
                    let combined = match sign {
                        GammaSign::Plus => g.mul(d[maps.f1[i]], d[maps.f2[i]]),
                        GammaSign::Minus => g.mul(d[maps.f1[i]], g.inv(d[maps.f2[i]])),
                    };
                    if combined != g.identity() {
                        violations.push(format!("output constraint fails at triple {i}"));
                        break;
                    }
                }
                match torsor::gamma_diff(&gamma, &d, torsor, &pairing, sign) {
                    Ok(dd) => {
                        if let Some(x) = dd.iter().position(|&v| v != g.identity()) {
                            violations.push(format!("d^2 phi != 0 at triple {x}"));
                        }
                    }
                    Err(e) => violations.push(e.to_string()),
                }
            }
            Err(e) => violations.push(e.to_string()),
        }
        sweeps.push(sweep(
            &format!("gamma-diff-{tag}"),
            &format!("{torsor_name}, heisenberg-Z3^3"),
            3,
            2 * size as u64,
            violations,
        ));
    }

    let mut violations = Vec::new();
    for pair in 0..3 {
        let phi = random(&mut rng);
        let psi = random(&mut rng);
        if let Some(x) =
            torsor::modified_leibniz_residual(&gamma, &phi, &psi, torsor, &pairing)?
        {
            violations.push(format!("modified Leibniz rule fails at triple {x} (pair {pair})"));
        }
        if let Some(x) =
            torsor::expanded_leibniz_residual(&gamma, &phi, &psi, torsor, &pairing)?
        {
            violations.push(format!("expanded Leibniz form fails at triple {x} (pair {pair})"));
        }
    }
    sweeps.push(sweep(
        "modified-leibniz-rule",
        &format!("{torsor_name}, heisenberg-Z3^3"),
        3,
        (6 * size) as u64,
        violations,
    ));

    Ok(LabReport {
        proposition: "gamma-diff".to_string(),
        seed,
        sweeps,
    })
}

/// The iota 3-cycle certificate.
pub fn iota_suite(torsor: &TorsorTable) -> Result<LabReport, SuiteError> {
    let (violations, points) = match torsor::iota_cycle(torsor) {
        Ok((_, points)) => (Vec::new(), points),
        Err(e) => (vec![e.to_string()], 0),
    };
    Ok(LabReport {
        proposition: "iota".to_string(),
        seed: 0,
        sweeps: vec![sweep("iota-three-cycle", torsor.name(), 3, points, violations)],
    })
}

/// Builds a torsor either from a group spec string or from a JSON table.
pub fn resolve_torsor(spec: &str, json: Option<&str>) -> Result<TorsorTable, SuiteError> {
    match json {
        Some(text) => Ok(TorsorTable::from_json("torsor(json)", text)?),
        None => {
            let base = FiniteGroup::from_spec(spec)?;
            Ok(TorsorTable::from_group(&base))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_on_their_canonical_configurations() {
        assert!(projector_suite(1, 10, 6).passed());
        assert!(z3_hexagon_suite("Z5", "S3", 1, 2).unwrap().passed());
        assert!(nary_hexagon_suite("Z3", "Z9", 2, 1).unwrap().passed());
        assert!(cycle_suite("S3", 3).unwrap().passed());
        assert!(coefficient_suite("Z5", 2, 1, 4).unwrap().passed());
        assert!(skew_parity_suite("S3", 1).unwrap().passed());
        assert!(diff_1d_suite(3, 2, 1).unwrap().passed());
        assert!(diff_2d_suite(3, 1).unwrap().passed());
        assert!(diff_3d_suite(1).unwrap().passed());
        let z6 = resolve_torsor("Z6", None).unwrap();
        assert!(torsor_gamma_suite(&z6, "S3", 1).unwrap().passed());
        let z5 = resolve_torsor("Z5", None).unwrap();
        assert!(torsor_diff_suite(&z5, 5, 1).unwrap().passed());
        let z3 = resolve_torsor("Z3", None).unwrap();
        assert!(gamma_diff_suite(&z3, 1).unwrap().passed());
        let s3 = resolve_torsor("S3", None).unwrap();
        assert!(iota_suite(&s3).unwrap().passed());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&z3_hexagon_suite("Z5", "Z6", 7, 2).unwrap()).unwrap();
        let b = serde_json::to_string(&z3_hexagon_suite("Z5", "Z6", 7, 2).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn configuration_errors_are_not_check_failures() {
        assert!(nary_hexagon_suite("S3", "Z5", 2, 1).is_err());
        assert!(z3_hexagon_suite("Q8", "Z5", 1, 1).is_err());
    }
}
