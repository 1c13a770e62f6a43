//! The `n = 11` tiling and partial difference set checks.
//!
//! `B(11,2,1,1)` reduces mod 3 to the radius-2 Hamming ball of `F_3^11`, so
//! any syndrome map of a perfect 2-error-correcting ternary code is a
//! bijection from the ball onto `Z_3^5`. The images below are the syndromes
//! `x^i mod g(x)` of the cyclic ternary Golay code with generator
//! `g(x) = x^5 + x^4 + 2x^3 + x^2 + 2`; residue `j` of column `i` is the
//! coefficient of `x^j`. `examples/golay_columns.rs` rederives them.

use serde::{Deserialize, Serialize};

use crate::abelian::{GroupSpec, RankTable};
use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;
use crate::tiling::TilingHomomorphism;

pub const GOLAY_GENERATOR: [u64; 6] = [2, 0, 1, 2, 1, 1];

pub const GOLAY11_COLUMNS: [[u64; 5]; 11] = [
    [1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1],
    [1, 0, 2, 1, 2],
    [2, 1, 1, 1, 2],
    [2, 2, 2, 0, 2],
    [2, 2, 0, 1, 1],
    [1, 2, 1, 1, 0],
    [0, 1, 2, 1, 1],
];

pub fn golay11_tiling() -> TilingHomomorphism {
    let spec = GroupSpec::new(vec![3; 5]).expect("Z_3^5");
    let images = GOLAY11_COLUMNS
        .iter()
        .map(|c| {
            let r: Vec<i64> = c.iter().map(|&x| x as i64).collect();
            spec.element(&r).expect("five residues")
        })
        .collect();
    TilingHomomorphism::new(spec, images).expect("constant data")
}

/// Syndromes `x^i mod g(x)` over `F_3`, `i = 0..len`.
pub fn cyclic_syndromes(generator: &[u64], len: usize) -> Vec<Vec<u64>> {
    let deg = generator.len() - 1;
    let lead_inv = if generator[deg] % 3 == 1 { 1 } else { 2 };
    let mut out = Vec::with_capacity(len);
    let mut cur = vec![0u64; deg];
    cur[0] = 1;
    for _ in 0..len {
        out.push(cur.clone());
        // multiply by x, then fold x^deg back through g
        let carry = cur[deg - 1];
        for j in (1..deg).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        let factor = carry * lead_inv % 3;
        for j in 0..deg {
            cur[j] = (cur[j] + 3 - factor * generator[j] % 3) % 3;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdsParameters {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl PdsParameters {
    /// `(2n^2+1, 2n, 1, 2)`.
    pub fn tiling(n: u64) -> Self {
        PdsParameters {
            v: 2 * n * n + 1,
            k: 2 * n,
            lambda: 1,
            mu: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdsReport {
    pub params: PdsParameters,
    pub identity_excluded: bool,
    pub symmetric: bool,
    pub size_ok: bool,
    /// `D^2 = mu G + (lambda - mu) D + (k - mu) e`
    pub square_identity: bool,
}

impl PdsReport {
    pub fn passed(&self) -> bool {
        self.identity_excluded && self.symmetric && self.size_ok && self.square_identity
    }
}

pub fn check_pds(d: &GroupRingElement, params: PdsParameters) -> Result<PdsReport> {
    if d.spec().order() != params.v {
        return Err(Error::OrderMismatch {
            expected: params.v,
            found: d.spec().order(),
        });
    }
    d.ensure_zero_one()?;
    let table = RankTable::new(d.spec());
    let (lambda, mu, k) = (params.lambda as i64, params.mu as i64, params.k as i64);
    let mut rhs = GroupRingElement::linear_combine(
        mu,
        &GroupRingElement::all_ones(d.spec()),
        lambda - mu,
        d,
    )?;
    rhs = rhs.add(&GroupRingElement::unit(d.spec()).scale(k - mu)?)?;
    Ok(PdsReport {
        params,
        identity_excluded: d.identity_coefficient() == 0,
        symmetric: d.power_map_with(-1, &table) == *d,
        size_ok: d.support_size() as u64 == params.k,
        square_identity: d.multiply_with(d, &table)? == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::generate_ball;
    use crate::groupring::check_theorem3;

    #[test]
    fn generator_divides_x11_minus_1() {
        // x^11 mod g must be 1
        let s = cyclic_syndromes(&GOLAY_GENERATOR, 12);
        assert_eq!(s[11], vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn literal_columns_match_generator() {
        let derived = cyclic_syndromes(&GOLAY_GENERATOR, 11);
        for (lit, der) in GOLAY11_COLUMNS.iter().zip(&derived) {
            assert_eq!(lit.as_slice(), der.as_slice());
        }
    }

    #[test]
    fn golay_map_tiles() {
        let phi = golay11_tiling();
        let report = phi
            .verify_tiling(&generate_ball(11, 2, 1, 1).unwrap())
            .unwrap();
        assert!(report.bijective);
        let t = phi.induced_code_set();
        assert!(check_theorem3(&t, 11).unwrap().passed());
        let pds = check_pds(&t.star(), PdsParameters::tiling(11)).unwrap();
        assert!(pds.passed());
        assert_eq!(t.star().support_size(), 22);
    }

    #[test]
    fn degenerate_and_paley() {
        let z13 = GroupSpec::cyclic(13).unwrap();
        let empty = GroupRingElement::zero(&z13);
        let params = PdsParameters {
            v: 13,
            k: 0,
            lambda: 5,
            mu: 0,
        };
        assert!(check_pds(&empty, params).unwrap().passed());

        let residues: std::collections::BTreeSet<u64> = (1..13u64).map(|x| x * x % 13).collect();
        let elements: Vec<_> = residues
            .iter()
            .map(|&r| z13.element(&[r as i64]).unwrap())
            .collect();
        let qr = GroupRingElement::from_multiset(&z13, &elements).unwrap();
        let params = PdsParameters {
            v: 13,
            k: 6,
            lambda: 2,
            mu: 3,
        };
        assert!(check_pds(&qr, params).unwrap().passed());
        let wrong = PdsParameters {
            v: 13,
            k: 6,
            lambda: 3,
            mu: 2,
        };
        assert!(!check_pds(&qr, wrong).unwrap().passed());
        assert!(matches!(
            check_pds(&qr, PdsParameters::tiling(3)),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn pds_agrees_with_square_condition() {
        // T = e + D; both criteria should accept or reject together
        let phi = golay11_tiling();
        let t = phi.induced_code_set();
        let mut coeffs = t.coefficients().to_vec();
        // move one symmetric pair onto a non-member pair
        let a = t.support()[1];
        let table = RankTable::new(t.spec());
        let outside = (1..coeffs.len()).find(|&r| coeffs[r] == 0).unwrap();
        coeffs[a] = 0;
        coeffs[table.neg(a)] = 0;
        coeffs[outside] = 1;
        coeffs[table.neg(outside)] = 1;
        let broken = GroupRingElement::from_coefficients(t.spec().clone(), coeffs).unwrap();
        for candidate in [&t, &broken] {
            let thm = check_theorem3(candidate, 11).unwrap();
            let pds = check_pds(&candidate.star(), PdsParameters::tiling(11)).unwrap();
            assert_eq!(thm.square_identity, pds.square_identity);
        }
        assert!(!check_theorem3(&broken, 11).unwrap().passed());
    }
}
