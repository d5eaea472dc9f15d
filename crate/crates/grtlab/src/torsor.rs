//! Finite torsors: validated ternary tables, the canonical gamma
//! solutions, the f-map symmetries with their Klein-four structure, torsor
//! differentials with the modified Leibniz rule, and the iota 3-cycle.

use thiserror::Error;

use crate::exec;
use crate::group::{FiniteGroup, GroupError};
use crate::nary::{BinaryPairing, TupleDomain};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorsorError {
    #[error("reflection axiom fails at ({0}, {1})")]
    ReflectionFailed(usize, usize),
    #[error("para-associativity fails at quintuple index {0}")]
    ParaAssociativityFailed(usize),
    #[error("table is not a cube of the label count")]
    MalformedTable,
    #[error("f-map relation `{relation}` fails at triple {point}; this falsifies the construction")]
    FMapRelationFailed {
        relation: &'static str,
        point: usize,
    },
    #[error("iota iterate `{relation}` fails at triple {point}")]
    IotaFailed {
        relation: &'static str,
        point: usize,
    },
    #[error("gamma constraint gamma.f1 + gamma.f2 = 0 fails at triple {0}")]
    GammaConstraintFailed(usize),
    #[error("equation (6) residual is not the identity at triple {0}")]
    GammaGuaranteeFailed(usize),
    #[error("pairing `{0}` lacks a required property: {1}")]
    PairingUnsuitable(String, &'static str),
    #[error("target group must be abelian, got {0}")]
    TargetNotAbelian(String),
}

/// A finite set with a validated ternary torsor operation. Both reflection
/// axioms and para-associativity are checked exhaustively at construction;
/// the heap and abelian flags are computed, never assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsorTable {
    name: String,
    labels: Vec<String>,
    table: Vec<usize>, // (x * n + y) * n + z
    heap: bool,
    abelian: bool,
}

impl TorsorTable {
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<usize>,
    ) -> Result<Self, TorsorError> {
        let n = labels.len();
        if n == 0 || table.len() != n * n * n || table.iter().any(|&v| v >= n) {
            return Err(TorsorError::MalformedTable);
        }
        let tau = |x: usize, y: usize, z: usize| table[(x * n + y) * n + z];
        for x in 0..n {
            for y in 0..n {
                if tau(x, y, y) != x || tau(y, y, x) != x {
                    return Err(TorsorError::ReflectionFailed(x, y));
                }
            }
        }
        // tau(tau(x,y,z), v, w) = tau(x, y, tau(z,v,w)) over the full cube
        let para = exec::first_failure(n * n * n, |i| {
            let (x, y, z) = ((i / n) / n, (i / n) % n, i % n);
            for v in 0..n {
                for w in 0..n {
                    if tau(tau(x, y, z), v, w) != tau(x, y, tau(z, v, w)) {
                        return false;
                    }
                }
            }
            true
        });
        if let Some(i) = para {
            return Err(TorsorError::ParaAssociativityFailed(i));
        }
        let heap = exec::first_failure(n * n * n, |i| {
            let (x, y, z) = ((i / n) / n, (i / n) % n, i % n);
            for v in 0..n {
                for w in 0..n {
                    if tau(tau(x, y, z), v, w) != tau(x, tau(v, z, y), w) {
                        return false;
                    }
                }
            }
            true
        })
        .is_none();
        let abelian = (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| tau(x, y, z) == tau(z, y, x)))
        });
        Ok(TorsorTable {
            name: name.into(),
            labels,
            table,
            heap,
            abelian,
        })
    }

    /// The standard torsor of a group: `tau(x,y,z) = x . y^{-1} . z`.
    pub fn from_group(group: &FiniteGroup) -> Self {
        let n = group.order();
        let labels = (0..n).map(|i| group.label(i).to_string()).collect();
        let mut table = vec![0; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    table[(x * n + y) * n + z] = group.product(&[x, group.inv(y), z]);
                }
            }
        }
        TorsorTable::from_table(format!("torsor({})", group.name()), labels, table)
            .expect("group torsors satisfy the axioms")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn tau(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.order();
        self.table[(x * n + y) * n + z]
    }

    pub fn is_heap(&self) -> bool {
        self.heap
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Loads a torsor from its JSON form
    /// `{"labels": [...], "table": [...]}` with the table flattened in
    /// `(x, y, z)` row-major order; the axioms are validated as usual.
    pub fn from_json(name: impl Into<String>, json: &str) -> Result<Self, TorsorError> {
        #[derive(serde::Deserialize)]
        struct TorsorJson {
            labels: Vec<String>,
            table: Vec<usize>,
        }
        let parsed: TorsorJson =
            serde_json::from_str(json).map_err(|_| TorsorError::MalformedTable)?;
        TorsorTable::from_table(name, parsed.labels, parsed.table)
    }

    /// Anchoring at a basepoint recovers a group: `x . z := tau(x, base, z)`.
    pub fn anchored_group(&self, base: usize) -> Result<FiniteGroup, GroupError> {
        let n = self.order();
        let mut table = vec![0; n * n];
        for x in 0..n {
            for z in 0..n {
                table[x * n + z] = self.tau(x, base, z);
            }
        }
        FiniteGroup::from_table(
            format!("{}@{}", self.name, self.labels[base]),
            self.labels.clone(),
            table,
        )
    }

    pub fn triple_domain(&self) -> TupleDomain {
        TupleDomain::new(self.order(), 3).expect("triple domain fits")
    }
}

/// The three symmetry maps on `X^3` as tuple-index tables, with their
/// relations verified exhaustively: `f1^2 = id = f2^2` and
/// `f1 . f2 = f2 . f1 = f3`. The Klein-four extras (`f3^2 = id`,
/// `f2 . f3 = f1`, `f1 . f3 = f2`) are always checked and reported; a
/// failure aborts only when the torsor is abelian, where the proposition
/// requires them.
#[derive(Debug, Clone)]
pub struct FMaps {
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
    pub f3: Vec<usize>,
    pub klein_four_holds: bool,
    pub points_checked: u64,
}

pub fn f_maps(torsor: &TorsorTable) -> Result<FMaps, TorsorError> {
    let domain = torsor.triple_domain();
    let decode = |i: usize| domain.decode(i);
    let mut f1 = vec![0; domain.size];
    let mut f2 = vec![0; domain.size];
    let mut f3 = vec![0; domain.size];
    for i in 0..domain.size {
        let t = decode(i);
        let (x, y, z) = (t[0], t[1], t[2]);
        let txyz = torsor.tau(x, y, z);
        f1[i] = domain.encode(&[txyz, z, y]);
        f2[i] = domain.encode(&[y, x, txyz]);
        f3[i] = domain.encode(&[z, txyz, x]);
    }

    let check = |name: &'static str, ok: &dyn Fn(usize) -> bool| -> Result<(), TorsorError> {
        match (0..domain.size).find(|&i| !ok(i)) {
            None => Ok(()),
            Some(point) => Err(TorsorError::FMapRelationFailed {
                relation: name,
                point,
            }),
        }
    };
    check("f1^2 = id", &|i| f1[f1[i]] == i)?;
    check("f2^2 = id", &|i| f2[f2[i]] == i)?;
    check("f1 . f2 = f3", &|i| f1[f2[i]] == f3[i])?;
    check("f2 . f1 = f3", &|i| f2[f1[i]] == f3[i])?;

    let klein_four_holds = (0..domain.size).all(|i| f3[f3[i]] == i)
        && (0..domain.size).all(|i| f2[f3[i]] == f1[i])
        && (0..domain.size).all(|i| f1[f3[i]] == f2[i]);
    if torsor.is_abelian() && !klein_four_holds {
        return Err(TorsorError::FMapRelationFailed {
            relation: "Klein four-group relations on an abelian torsor",
            point: 0,
        });
    }
    Ok(FMaps {
        f1,
        f2,
        f3,
        klein_four_holds,
        points_checked: (domain.size * 7) as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaSign {
    Plus,
    Minus,
}

/// Canonical solutions of equation (6):
/// `gamma^-(p) = phi(f1 p)^{-1} . phi(f2 p)` and
/// `gamma^+(p) = phi(f1 p) . phi(f2 p)^{-1}`, where
/// `f1 p = (tau(x,y,z), z, y)` and `f2 p = (y, x, tau(x,y,z))`. The defining
/// identity `gamma(f1 p) . gamma(f2 p) = e` is re-verified exhaustively.
pub fn gamma_solve(
    phi: &[usize],
    torsor: &TorsorTable,
    target: &FiniteGroup,
    sign: GammaSign,
) -> Result<Vec<usize>, TorsorError> {
    let maps = f_maps(torsor)?;
    let gamma: Vec<usize> = (0..phi.len())
        .map(|i| {
            let a = phi[maps.f1[i]];
            let b = phi[maps.f2[i]];
            match sign {
                GammaSign::Minus => target.mul(target.inv(a), b),
                GammaSign::Plus => target.mul(a, target.inv(b)),
            }
        })
        .collect();
    match gamma_equation_residual(&gamma, &maps, target) {
        None => Ok(gamma),
        Some(point) => Err(TorsorError::GammaGuaranteeFailed(point)),
    }
}

/// First triple where `gamma(f1 p) . gamma(f2 p) != e`.
pub fn gamma_equation_residual(
    gamma: &[usize],
    maps: &FMaps,
    target: &FiniteGroup,
) -> Option<usize> {
    exec::first_failure(gamma.len(), |i| {
        target.mul(gamma[maps.f1[i]], gamma[maps.f2[i]]) == target.identity()
    })
}

/// The torsor differential `(d phi)(p) = [phi(f1 p), phi(f2 p)]` for a skew
/// bihomomorphic pairing; squares to the constant identity.
pub fn torsor_diff(
    phi: &[usize],
    torsor: &TorsorTable,
    pairing: &BinaryPairing,
) -> Result<Vec<usize>, TorsorError> {
    if !pairing.is_skew() {
        return Err(TorsorError::PairingUnsuitable(
            pairing.name().to_string(),
            "skew-symmetry",
        ));
    }
    if !pairing.is_bihomomorphism() {
        return Err(TorsorError::PairingUnsuitable(
            pairing.name().to_string(),
            "bihomomorphism",
        ));
    }
    Ok(torsor_diff_unchecked(phi, torsor, pairing)?)
}

/// [`torsor_diff`] without the pairing hypotheses, for the permissive
/// skew-only probe of the open question.
pub fn torsor_diff_unchecked(
    phi: &[usize],
    torsor: &TorsorTable,
    pairing: &BinaryPairing,
) -> Result<Vec<usize>, TorsorError> {
    let maps = f_maps(torsor)?;
    Ok((0..phi.len())
        .map(|i| pairing.apply(phi[maps.f1[i]], phi[maps.f2[i]]))
        .collect())
}

/// The default gamma for [`gamma_diff`]: `phi0 . f1 - phi0 . f2` satisfies
/// `gamma . f1 + gamma . f2 = 0` identically (abelian target).
pub fn canonical_gamma(
    phi0: &[usize],
    torsor: &TorsorTable,
    target: &FiniteGroup,
) -> Result<Vec<usize>, TorsorError> {
    gamma_solve(phi0, torsor, target, GammaSign::Minus)
}

/// The gamma-twisted differential `d^gamma phi = [gamma, phi.f1 +- phi.f2]`
/// for a bilinear pairing on an abelian group and a gamma with
/// `gamma.f1 + gamma.f2 = 0` (validated exhaustively). Squares to zero and
/// its output satisfies the same +-constraint.
pub fn gamma_diff(
    gamma: &[usize],
    phi: &[usize],
    torsor: &TorsorTable,
    pairing: &BinaryPairing,
    sign: GammaSign,
) -> Result<Vec<usize>, TorsorError> {
    let g = pairing.group().clone();
    if !g.is_abelian() {
        return Err(TorsorError::TargetNotAbelian(g.name().to_string()));
    }
    if !pairing.is_bihomomorphism() {
        return Err(TorsorError::PairingUnsuitable(
            pairing.name().to_string(),
            "bilinearity",
        ));
    }
    let maps = f_maps(torsor)?;
    if let Some(point) = exec::first_failure(gamma.len(), |i| {
        g.mul(gamma[maps.f1[i]], gamma[maps.f2[i]]) == g.identity()
    }) {
        return Err(TorsorError::GammaConstraintFailed(point));
    }
    Ok(gamma_diff_unchecked(gamma, phi, &maps, pairing, sign))
}

fn gamma_diff_unchecked(
    gamma: &[usize],
    phi: &[usize],
    maps: &FMaps,
    pairing: &BinaryPairing,
    sign: GammaSign,
) -> Vec<usize> {
    let g = pairing.group().clone();
    (0..phi.len())
        .map(|i| {
            let a = phi[maps.f1[i]];
            let b = phi[maps.f2[i]];
            let combined = match sign {
                GammaSign::Plus => g.mul(a, b),
                GammaSign::Minus => g.mul(a, g.inv(b)),
            };
            pairing.apply(gamma[i], combined)
        })
        .collect()
}

/// First triple violating the modified Leibniz rule (+ case, Lie pairing):
/// `d^gamma [phi, psi + psi.f3] = d^{d^gamma phi} psi - d^{d^gamma psi} phi`.
pub fn modified_leibniz_residual(
    gamma: &[usize],
    phi: &[usize],
    psi: &[usize],
    torsor: &TorsorTable,
    pairing: &BinaryPairing,
) -> Result<Option<usize>, TorsorError> {
    let g = pairing.group().clone();
    let maps = f_maps(torsor)?;
    let bracket = |a: &[usize], b: &[usize]| -> Vec<usize> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| pairing.apply(x, y))
            .collect()
    };
    let add = |a: &[usize], b: &[usize]| -> Vec<usize> {
        a.iter().zip(b).map(|(&x, &y)| g.mul(x, y)).collect()
    };
    let sub = |a: &[usize], b: &[usize]| -> Vec<usize> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| g.mul(x, g.inv(y)))
            .collect()
    };
    let compose = |a: &[usize], m: &[usize]| -> Vec<usize> {
        m.iter().map(|&j| a[j]).collect()
    };

    let d = |f: &[usize]| gamma_diff_unchecked(gamma, f, &maps, pairing, GammaSign::Plus);
    let d_twisted = |tw: &[usize], f: &[usize]| {
        gamma_diff_unchecked(tw, f, &maps, pairing, GammaSign::Plus)
    };

    let lhs = d(&bracket(phi, &add(psi, &compose(psi, &maps.f3))));
    let rhs = sub(&d_twisted(&d(phi), psi), &d_twisted(&d(psi), phi));
    Ok(exec::first_failure(lhs.len(), |i| lhs[i] == rhs[i]))
}

/// First triple violating the expanded form of the modified Leibniz rule:
/// `d^gamma [phi,psi] = [d^gamma phi, psi.f1 + psi.f2]
///  + [phi.f1 + phi.f2, d^gamma psi]
///  - [gamma, [phi.f1, psi.f2] + [phi.f2, psi.f1]]`.
pub fn expanded_leibniz_residual(
    gamma: &[usize],
    phi: &[usize],
    psi: &[usize],
    torsor: &TorsorTable,
    pairing: &BinaryPairing,
) -> Result<Option<usize>, TorsorError> {
    let g = pairing.group().clone();
    let maps = f_maps(torsor)?;
    let n = phi.len();
    let d = |f: &[usize]| gamma_diff_unchecked(gamma, f, &maps, pairing, GammaSign::Plus);
    let dphi = d(phi);
    let dpsi = d(psi);
    Ok(exec::first_failure(n, |i| {
        let lhs = {
            let bracket_pointwise: Vec<usize> = phi
                .iter()
                .zip(psi)
                .map(|(&x, &y)| pairing.apply(x, y))
                .collect();
            d(&bracket_pointwise)[i]
        };
        let term1 = pairing.apply(dphi[i], g.mul(psi[maps.f1[i]], psi[maps.f2[i]]));
        let term2 = pairing.apply(g.mul(phi[maps.f1[i]], phi[maps.f2[i]]), dpsi[i]);
        let inner = g.mul(
            pairing.apply(phi[maps.f1[i]], psi[maps.f2[i]]),
            pairing.apply(phi[maps.f2[i]], psi[maps.f1[i]]),
        );
        let term3 = pairing.apply(gamma[i], inner);
        let rhs = g.mul(g.mul(term1, term2), g.inv(term3));
        lhs == rhs
    }))
}

/// The 3-cycle `iota(x,y,z) = (tau(y,x,z), x, tau(tau(y,x,z), x, y))`,
/// verified exhaustively together with the displayed formula for its square
/// `iota^2(x,y,z) = (y, tau(y,x,z), tau(y, tau(y,x,z), x))` and
/// `iota^3 = id`. Works without the heap condition.
pub fn iota_cycle(torsor: &TorsorTable) -> Result<(Vec<usize>, u64), TorsorError> {
    let domain = torsor.triple_domain();
    let iota: Vec<usize> = (0..domain.size)
        .map(|i| {
            let t = domain.decode(i);
            let (x, y, z) = (t[0], t[1], t[2]);
            let a = torsor.tau(y, x, z);
            domain.encode(&[a, x, torsor.tau(a, x, y)])
        })
        .collect();
    if let Some(point) = exec::first_failure(domain.size, |i| {
        let t = domain.decode(i);
        let (x, y, z) = (t[0], t[1], t[2]);
        let a = torsor.tau(y, x, z);
        iota[iota[i]] == domain.encode(&[y, a, torsor.tau(y, a, x)])
    }) {
        return Err(TorsorError::IotaFailed {
            relation: "iota^2 formula",
            point,
        });
    }
    if let Some(point) =
        exec::first_failure(domain.size, |i| iota[iota[iota[i]]] == i)
    {
        return Err(TorsorError::IotaFailed {
            relation: "iota^3 = id",
            point,
        });
    }
    Ok((iota, (domain.size * 2) as u64))
}
