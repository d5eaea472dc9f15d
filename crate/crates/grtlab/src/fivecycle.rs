//! The birational five-cycle `f(x,y) = (y, (1-x)/(1-xy))` over prime
//! fields with its projector, and the Bloch-Wigner dilogarithm with the
//! five-term relation over the complex numbers.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exec;

#[derive(Debug, Error, PartialEq)]
pub enum FiveCycleError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("need p >= 5 for a nonempty domain")]
    PrimeTooSmall,
    #[error("p = {0} gives a domain too large for exhaustive sweeps (max p = 4001)")]
    PrimeTooLarge(u64),
    #[error("5 is not invertible modulo {0}")]
    FiveNotInvertible(u64),
    #[error("f does not map the domain into itself at point {0}")]
    ClosureFailed(usize),
    #[error("iterate formula f^{power} mismatches at point {point}")]
    IterateMismatch { power: usize, point: usize },
    #[error("f^5 != id at point {0}")]
    NotFiveCycle(usize),
    #[error("map table has wrong length")]
    MalformedTable,
    #[error("dilogarithm pole/branch point {0} rejected")]
    PoleInput(Complex64),
    #[error("input at distance {0:.3e} from the exceptional set, below the margin {1:.3e}")]
    TooCloseToExceptional(f64, f64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// The points of `F_p^2` minus the exceptional set
/// `{(0,.), (.,0), (1,.), (.,1), (x, 1/x)}`, indexed in row-major order.
#[derive(Debug, Clone)]
pub struct FpDomain {
    pub p: u64,
    points: Vec<(u64, u64)>,
    lookup: Vec<u32>, // p*p entries, u32::MAX for excluded points
}

impl FpDomain {
    pub fn new(p: u64) -> Result<Self, FiveCycleError> {
        if !is_prime(p) {
            return Err(FiveCycleError::NotPrime(p));
        }
        if p < 5 {
            return Err(FiveCycleError::PrimeTooSmall);
        }
        if p > 4001 {
            return Err(FiveCycleError::PrimeTooLarge(p));
        }
        let mut points = Vec::new();
        let mut lookup = vec![u32::MAX; (p * p) as usize];
        for x in 2..p {
            for y in 2..p {
                if x * y % p != 1 {
                    lookup[(x * p + y) as usize] = points.len() as u32;
                    points.push((x, y));
                }
            }
        }
        Ok(FpDomain { p, points, lookup })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> (u64, u64) {
        self.points[i]
    }

    pub fn index_of(&self, (x, y): (u64, u64)) -> Option<usize> {
        match self.lookup[(x * self.p + y) as usize] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// `f(x, y) = (y, (1-x)/(1-xy))` on the domain.
    pub fn apply_f(&self, (x, y): (u64, u64)) -> (u64, u64) {
        let p = self.p;
        let num = (1 + p - x) % p;
        let den = (1 + p - x * y % p) % p;
        (y, num * mod_inv(den, p) % p)
    }

    /// The cycle as an index table, after verifying closure.
    pub fn cycle_table(&self) -> Result<Vec<usize>, FiveCycleError> {
        let mut table = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            match self.index_of(self.apply_f(self.points[i])) {
                Some(j) => table.push(j),
                None => return Err(FiveCycleError::ClosureFailed(i)),
            }
        }
        Ok(table)
    }
}

/// Exhaustive verification report for one prime.
#[derive(Debug, Clone, Serialize)]
pub struct CycleReport {
    pub prime: u64,
    pub domain_size: usize,
    /// orbit size -> number of orbits
    pub orbit_census: BTreeMap<usize, usize>,
    pub fixed_points: usize,
    /// number of roots of `x^2 + x - 1 = 0` in `F_p`
    pub fixed_point_equation_roots: usize,
    pub points_checked: u64,
}

/// Enumerates the domain of `F_p`, verifies closure, `f^5 = id`, and the
/// displayed iterate formulas, and reports the orbit census. The census is
/// cross-checked against the fixed-point equation `x^2 + x - 1 = 0`.
pub fn fp_cycle(p: u64) -> Result<CycleReport, FiveCycleError> {
    let domain = FpDomain::new(p)?;
    let table = domain.cycle_table()?;
    let n = domain.len();

    // iterate formulas: f^2 = ((1-x)/(1-xy), 1-xy), f^3 = (1-xy, (1-y)/(1-xy)),
    // f^4 = ((1-y)/(1-xy), x), f^5 = id
    let closed = |power: usize, (x, y): (u64, u64)| -> (u64, u64) {
        let one_m_x = (1 + p - x) % p;
        let one_m_y = (1 + p - y) % p;
        let one_m_xy = (1 + p - x * y % p) % p;
        let inv = mod_inv(one_m_xy, p);
        match power {
            2 => (one_m_x * inv % p, one_m_xy),
            3 => (one_m_xy, one_m_y * inv % p),
            4 => (one_m_y * inv % p, x),
            _ => unreachable!(),
        }
    };
    for power in 2..=4 {
        if let Some(point) = exec::first_failure(n, |i| {
            let mut j = i;
            for _ in 0..power {
                j = table[j];
            }
            domain.point(j) == closed(power, domain.point(i))
        }) {
            return Err(FiveCycleError::IterateMismatch { power, point });
        }
    }
    if let Some(point) = exec::first_failure(n, |i| {
        let mut j = i;
        for _ in 0..5 {
            j = table[j];
        }
        j == i
    }) {
        return Err(FiveCycleError::NotFiveCycle(point));
    }

    let mut seen = vec![false; n];
    let mut orbit_census: BTreeMap<usize, usize> = BTreeMap::new();
    let mut fixed_points = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut size = 0;
        let mut j = start;
        loop {
            seen[j] = true;
            size += 1;
            j = table[j];
            if j == start {
                break;
            }
        }
        *orbit_census.entry(size).or_insert(0) += 1;
        if size == 1 {
            fixed_points += 1;
        }
    }
    let fixed_point_equation_roots = (0..p)
        .filter(|&x| (x * x + x + p - 1) % p == 0)
        .count();

    Ok(CycleReport {
        prime: p,
        domain_size: n,
        orbit_census,
        fixed_points,
        fixed_point_equation_roots,
        points_checked: (n * 4) as u64,
    })
}

/// Projects `phi: domain -> Z_m` (gcd(m,5) = 1) onto the solutions of
/// `sum_{i=1}^{5} phi . f^i = 0` via `(4 phi - sum_{i=1}^4 phi . f^i)/5`.
pub fn five_project(
    phi: &[u64],
    modulus: u64,
    cycle: &[usize],
) -> Result<Vec<u64>, FiveCycleError> {
    if phi.len() != cycle.len() {
        return Err(FiveCycleError::MalformedTable);
    }
    if modulus % 5 == 0 {
        return Err(FiveCycleError::FiveNotInvertible(modulus));
    }
    // inverse of 5 mod m by scanning; m is small
    let inv5 = (1..modulus)
        .find(|k| k * 5 % modulus == 1)
        .ok_or(FiveCycleError::FiveNotInvertible(modulus))?;
    let m = modulus;
    Ok((0..phi.len())
        .map(|i| {
            let mut acc = 4 * phi[i] % m;
            let mut j = i;
            for _ in 0..4 {
                j = cycle[j];
                acc = (acc + m - phi[j] % m) % m;
            }
            acc * inv5 % m
        })
        .collect())
}

/// First point where `sum_{i=1}^{5} phi(f^i x) != 0 (mod m)`.
pub fn cyclic_sum_violation(phi: &[u64], modulus: u64, cycle: &[usize]) -> Option<usize> {
    exec::first_failure(phi.len(), |start| {
        let mut acc = 0u64;
        let mut j = start;
        for _ in 0..5 {
            j = cycle[j];
            acc = (acc + phi[j]) % modulus;
        }
        acc == 0
    })
}

/// Coefficients `B_i / (i+1)!` of the series
/// `Li_2(z) = sum_i B_i w^{i+1} / (i+1)!` in `w = -log(1-z)`, computed once
/// from the Bernoulli recurrence in exact arithmetic.
fn bernoulli_series_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        use crate::rational::{int, rat, Rat};
        use num_traits::{ToPrimitive, Zero};
        let n_terms = 50usize;
        let mut bernoulli: Vec<Rat> = Vec::with_capacity(n_terms);
        for m in 0..n_terms {
            // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j, B_0 = 1
            if m == 0 {
                bernoulli.push(int(1));
                continue;
            }
            let mut acc = Rat::zero();
            let mut binom = int(1); // C(m+1, 0)
            for (j, b) in bernoulli.iter().enumerate() {
                acc += &binom * b;
                binom = binom * rat((m + 1 - j) as i64, (j + 1) as i64);
            }
            bernoulli.push(-acc / int((m + 1) as i64));
        }
        let mut factorial = int(1);
        bernoulli
            .iter()
            .enumerate()
            .map(|(i, b)| {
                factorial *= int((i + 1) as i64);
                (b / &factorial).to_f64().expect("small rational")
            })
            .collect()
    })
}

/// Complex dilogarithm, principal branch, via region reduction (inversion
/// for |z| > 1, reflection for Re z > 1/2) into the Bernoulli-accelerated
/// series in `-log(1-z)`. Accurate to close to machine precision away from
/// the branch cut `[1, inf)`.
pub fn dilog(z: Complex64) -> Complex64 {
    let pi2_6 = PI * PI / 6.0;
    if z == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.0, 0.0);
    }
    if z == Complex64::new(1.0, 0.0) {
        return Complex64::new(pi2_6, 0.0);
    }
    if z.norm() > 1.0 {
        // Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2
        let log_neg = (-z).ln();
        return -dilog(1.0 / z) - pi2_6 - 0.5 * log_neg * log_neg;
    }
    if z.re > 0.5 {
        // Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
        return pi2_6 - z.ln() * (1.0 - z).ln() - dilog(1.0 - z);
    }
    let w = -(1.0 - z).ln();
    let coeffs = bernoulli_series_coefficients();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for &c in coeffs {
        power *= w;
        if c != 0.0 {
            let term = c * power;
            acc += term;
            if term.norm() < 1e-20 * acc.norm().max(1e-300) {
                break;
            }
        }
    }
    acc
}

/// Bloch-Wigner function `D(z) = Im(Li_2(z)) + arg(1-z) log|z|`:
/// single-valued, real-analytic off `{0, 1}`, zero on the real axis,
/// antisymmetric under conjugation.
pub fn bloch_wigner(z: Complex64) -> Result<f64, FiveCycleError> {
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0) {
        return Err(FiveCycleError::PoleInput(z));
    }
    if z.im == 0.0 {
        return Ok(0.0);
    }
    Ok(dilog(z).im + (1.0 - z).arg() * z.norm().ln())
}

/// The five dilogarithm arguments along the cycle:
/// `x, y, (1-x)/(1-xy), (1-y)/(1-xy), 1-xy`.
pub fn five_term_arguments(x: Complex64, y: Complex64) -> [Complex64; 5] {
    let one = Complex64::new(1.0, 0.0);
    let d = one - x * y;
    [x, y, (one - x) / d, (one - y) / d, d]
}

/// Distance of the evaluation from the exceptional set: the minimum over
/// the five arguments `u` of `min(|u|, |u-1|)`.
pub fn exceptional_distance(x: Complex64, y: Complex64) -> f64 {
    five_term_arguments(x, y)
        .iter()
        .map(|u| u.norm().min((u - 1.0).norm()))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FiveTermReport {
    pub five_term_residual: f64,
    pub d_plus_cycle_residual: f64,
    pub d_minus_cycle_residual: f64,
}

impl FiveTermReport {
    pub fn max_residual(&self) -> f64 {
        self.five_term_residual
            .max(self.d_plus_cycle_residual)
            .max(self.d_minus_cycle_residual)
    }
}

/// Evaluates the five-term residual
/// `D(x) + D(y) + D((1-x)/(1-xy)) + D((1-y)/(1-xy)) + D(1-xy)`
/// and both `D_+-` cyclic-sum residuals along the orbit of `f`. Inputs
/// closer than `margin` to the exceptional set are rejected rather than
/// special-cased.
pub fn five_term_check(
    x: Complex64,
    y: Complex64,
    margin: f64,
) -> Result<FiveTermReport, FiveCycleError> {
    let dist = exceptional_distance(x, y);
    if dist < margin {
        return Err(FiveCycleError::TooCloseToExceptional(dist, margin));
    }
    let args = five_term_arguments(x, y);
    let mut five_term = 0.0;
    for u in args {
        five_term += bloch_wigner(u)?;
    }

    let f = |(a, b): (Complex64, Complex64)| (b, (1.0 - a) / (1.0 - a * b));
    let mut point = (x, y);
    let mut d_plus = 0.0;
    let mut d_minus = 0.0;
    for _ in 0..5 {
        point = f(point);
        let da = bloch_wigner(point.0)?;
        let db = bloch_wigner(point.1)?;
        d_plus += da + db;
        d_minus += da - db;
    }
    Ok(FiveTermReport {
        five_term_residual: five_term.abs(),
        d_plus_cycle_residual: d_plus.abs(),
        d_minus_cycle_residual: d_minus.abs(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FiveTermSweep {
    pub samples: usize,
    pub seed: u64,
    pub margin: f64,
    pub max_five_term_residual: f64,
    pub max_d_plus_residual: f64,
    pub max_d_minus_residual: f64,
}

impl FiveTermSweep {
    pub fn max_residual(&self) -> f64 {
        self.max_five_term_residual
            .max(self.max_d_plus_residual)
            .max(self.max_d_minus_residual)
    }
}

/// Draws seeded samples from the unit bidisk, skips those within `margin`
/// of the exceptional set, and reports maximal residuals over `samples`
/// accepted points.
pub fn five_term_sweep(samples: usize, seed: u64, margin: f64) -> FiveTermSweep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted: Vec<(Complex64, Complex64)> = Vec::with_capacity(samples);
    while accepted.len() < samples {
        let draw = |rng: &mut ChaCha8Rng| loop {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if z.norm() <= 1.0 {
                return z;
            }
        };
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        if exceptional_distance(x, y) >= margin {
            accepted.push((x, y));
        }
    }
    let reports: Vec<FiveTermReport> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            accepted
                .par_iter()
                .map(|&(x, y)| five_term_check(x, y, margin).expect("margin pre-checked"))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            accepted
                .iter()
                .map(|&(x, y)| five_term_check(x, y, margin).expect("margin pre-checked"))
                .collect()
        }
    };
    FiveTermSweep {
        samples,
        seed,
        margin,
        max_five_term_residual: reports
            .iter()
            .map(|r| r.five_term_residual)
            .fold(0.0, f64::max),
        max_d_plus_residual: reports
            .iter()
            .map(|r| r.d_plus_cycle_residual)
            .fold(0.0, f64::max),
        max_d_minus_residual: reports
            .iter()
            .map(|r| r.d_minus_cycle_residual)
            .fold(0.0, f64::max),
    }
}
