//! Modular nonexistence certificates for tilings by `B(n,2,1,1)`.
//!
//! Write `2n^2 + 1 = m p` with `p` prime and `p > 2n + 1`. Let `b` be the
//! order of 4 mod `p` and `a` the least `k >= 0` with `4^k ≡ 4n + 2 (mod p)`
//! (`a = ∞` if there is none). A tiling forces some
//! `ℓ ∈ {0, ..., ⌊√((m-1)/2)⌋}` for which `a(x+1) + b y = n - ℓ` has a
//! solution in nonnegative integers. If every row of that table is
//! unsolvable, no tiling exists.
//!
//! When `a = 0` (i.e. `p | 4n + 1`) the table is also built with the least
//! positive exponent `a = b`, and nonexistence is only claimed if both tables
//! agree.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::factorize;
use crate::error::{Error, Result};
use crate::groupring::tiling_group_order;

/// Exponent `a`, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(a) => write!(f, "{a}"),
            Exponent::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(a) => serializer.serialize_u64(*a),
            Exponent::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(a) => Ok(Exponent::Finite(a)),
            Raw::Str(s) if s == "infinite" => Ok(Exponent::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected an integer or \"infinite\", got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Nonexistence,
    Inconclusive,
    Inapplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub x: u64,
    pub y: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRow {
    pub ell: u64,
    pub target: u64,
    pub representable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// The table rebuilt with the least positive exponent when `a = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveVariant {
    pub a: u64,
    pub rows: Vec<CertificateRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KimCertificate {
    pub n: u64,
    pub order: u64,
    pub p: u64,
    pub m: u64,
    pub a: Exponent,
    pub b: u64,
    pub ell_max: u64,
    pub p_exceeds_2n_plus_1: bool,
    pub rows: Vec<CertificateRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_positive: Option<PositiveVariant>,
    pub conclusion: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InapplicableReport {
    pub n: u64,
    pub order: u64,
    pub conclusion: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertifyOutcome {
    Certificate(KimCertificate),
    Inapplicable(InapplicableReport),
}

impl CertifyOutcome {
    pub fn verdict(&self) -> Verdict {
        match self {
            CertifyOutcome::Certificate(c) => c.conclusion,
            CertifyOutcome::Inapplicable(r) => r.conclusion,
        }
    }

    pub fn certificate(&self) -> Option<&KimCertificate> {
        match self {
            CertifyOutcome::Certificate(c) => Some(c),
            CertifyOutcome::Inapplicable(_) => None,
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_n(n: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need n >= 3, got {n}")));
    }
    if n > 3_000_000_000 {
        return Err(Error::InvalidArgument(format!("n = {n} is too large")));
    }
    Ok(())
}

/// Prime divisors `p > 2n + 1` of `2n^2 + 1`, ascending.
pub fn admissible_primes(n: u64) -> Result<Vec<u64>> {
    check_n(n)?;
    Ok(factorize(tiling_group_order(n))
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&p| p > 2 * n + 1)
        .collect())
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `(a, b)`: the least `k >= 0` with `4^k ≡ 4n + 2 (mod p)` and the order of 4 mod `p`.
pub fn kim_parameters(n: u64, p: u64) -> Result<(Exponent, u64)> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotAdmissiblePrime(p));
    }
    let target = ((4 * n as u128 + 2) % p as u128) as u64;
    let mut power = 1u64;
    let mut a = None;
    let mut b = 0u64;
    // one full period of 4 mod p: k = 0..b-1
    loop {
        if a.is_none() && power == target {
            a = Some(b);
        }
        b += 1;
        power = mul_mod(power, 4, p);
        if power == 1 {
            break;
        }
    }
    Ok((a.map_or(Exponent::Infinite, Exponent::Finite), b))
}

/// Solves `a(x+1) + b y = target` over nonnegative integers, smallest `x` first.
pub fn representable(a: Exponent, b: u64, target: u64) -> Option<Witness> {
    assert!(b >= 1, "b must be positive");
    match a {
        Exponent::Infinite => None,
        Exponent::Finite(0) => target.is_multiple_of(b).then_some(Witness {
            x: 0,
            y: target / b,
        }),
        Exponent::Finite(a) => {
            let mut used = a;
            let mut x = 0;
            while used <= target {
                let rest = target - used;
                if rest.is_multiple_of(b) {
                    return Some(Witness { x, y: rest / b });
                }
                x += 1;
                used += a;
            }
            None
        }
    }
}

/// Largest `ℓ` with `2ℓ^2 + 1 <= m`, capped at `n`.
fn ell_max(m: u64, n: u64) -> u64 {
    let mut ell = 0u64;
    while ell < n && 2 * (ell + 1) * (ell + 1) < m {
        ell += 1;
    }
    ell
}

fn build_rows(n: u64, ell_max: u64, a: Exponent, b: u64) -> Vec<CertificateRow> {
    (0..=ell_max)
        .map(|ell| {
            let target = n - ell;
            let witness = representable(a, b, target);
            CertificateRow {
                ell,
                target,
                representable: witness.is_some(),
                witness,
            }
        })
        .collect()
}

/// The certificate for one admissible prime.
pub fn certificate_for_prime(n: u64, p: u64) -> Result<KimCertificate> {
    check_n(n)?;
    let order = tiling_group_order(n);
    if !order.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "{p} does not divide {order}"
        )));
    }
    let (a, b) = kim_parameters(n, p)?;
    Ok(assemble(n, order, p, a, b))
}

// a = 0 would need p = 4n + 1 dividing 2n^2 + 1, which forces p | 18; the
// dual table is kept so the verdict never depends on that argument.
fn assemble(n: u64, order: u64, p: u64, a: Exponent, b: u64) -> KimCertificate {
    let m = order / p;
    let ell_max = ell_max(m, n);
    let rows = build_rows(n, ell_max, a, b);
    let a_positive = (a == Exponent::Finite(0)).then(|| PositiveVariant {
        a: b,
        rows: build_rows(n, ell_max, Exponent::Finite(b), b),
    });
    let p_exceeds = p > 2 * n + 1;
    let all_blocked = rows.iter().all(|r| !r.representable)
        && a_positive
            .as_ref()
            .is_none_or(|v| v.rows.iter().all(|r| !r.representable));
    KimCertificate {
        n,
        order,
        p,
        m,
        a,
        b,
        ell_max,
        p_exceeds_2n_plus_1: p_exceeds,
        rows,
        a_positive,
        conclusion: if all_blocked && p_exceeds {
            Verdict::Nonexistence
        } else {
            Verdict::Inconclusive
        },
    }
}

/// Tries every admissible prime; the first one whose table is entirely
/// unsolvable proves nonexistence.
pub fn certify_nonexistence(n: u64) -> Result<CertifyOutcome> {
    let primes = admissible_primes(n)?;
    let mut first = None;
    for p in primes {
        let cert = certificate_for_prime(n, p)?;
        if cert.conclusion == Verdict::Nonexistence {
            return Ok(CertifyOutcome::Certificate(cert));
        }
        first.get_or_insert(cert);
    }
    Ok(match first {
        Some(cert) => CertifyOutcome::Certificate(cert),
        None => CertifyOutcome::Inapplicable(InapplicableReport {
            n,
            order: tiling_group_order(n),
            conclusion: Verdict::Inapplicable,
        }),
    })
}

/// Re-checks every claim in a certificate from first principles, sharing no
/// code with the constructor. Returns the list of defects found.
pub fn validate_certificate(cert: &KimCertificate) -> std::result::Result<(), Vec<String>> {
    let mut defects = Vec::new();
    let n = cert.n as u128;
    let p = cert.p as u128;
    let order = 2 * n * n + 1;
    note(
        &mut defects,
        cert.order as u128 == order,
        format!("order {} != 2n^2+1", cert.order),
    );
    let prime = p >= 3
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d));
    note(&mut defects, prime, format!("p = {p} is not an odd prime"));
    note(
        &mut defects,
        p > 2 * n + 1,
        format!("p = {p} does not exceed 2n+1"),
    );
    note(
        &mut defects,
        cert.p_exceeds_2n_plus_1 == (p > 2 * n + 1),
        "recorded p > 2n+1 flag is wrong".into(),
    );
    note(
        &mut defects,
        order.is_multiple_of(p) && cert.m as u128 * p == order,
        format!("m p = {} * {p} != {order}", cert.m),
    );
    if !prime {
        return Err(defects);
    }

    // the powers of 4 listed over one full period
    let mut powers = vec![1u128];
    while powers.len() as u128 <= p {
        let next = powers.last().unwrap() * 4 % p;
        if next == 1 {
            break;
        }
        powers.push(next);
    }
    note(
        &mut defects,
        powers.len() as u64 == cert.b,
        format!(
            "order of 4 mod {p} is {}, certificate says {}",
            powers.len(),
            cert.b
        ),
    );
    let goal = (4 * n + 2) % p;
    let a = powers
        .iter()
        .position(|&x| x == goal)
        .map_or(Exponent::Infinite, |k| Exponent::Finite(k as u64));
    note(
        &mut defects,
        a == cert.a,
        format!("a should be {a}, certificate says {}", cert.a),
    );

    let mut ell_max = 0u128;
    while ell_max < n && 2 * (ell_max + 1) * (ell_max + 1) < cert.m as u128 {
        ell_max += 1;
    }
    note(
        &mut defects,
        ell_max as u64 == cert.ell_max,
        format!("ell_max should be {ell_max}"),
    );

    fn scan(a: Exponent, b: u64, target: u64) -> bool {
        let Exponent::Finite(a) = a else { return false };
        (0..=target).any(|x| {
            (0..=target).any(|y| {
                let lhs = a as u128 * (x as u128 + 1) + b as u128 * y as u128;
                lhs == target as u128
            })
        })
    }
    fn check_rows(
        defects: &mut Vec<String>,
        cert: &KimCertificate,
        ell_max: u128,
        label: &str,
        a: Exponent,
        rows: &[CertificateRow],
    ) -> bool {
        let n = cert.n as u128;
        let mut all_blocked = true;
        note(
            defects,
            rows.len() as u128 == ell_max + 1,
            format!("{label}: {} rows, expected {}", rows.len(), ell_max + 1),
        );
        for (i, row) in rows.iter().enumerate() {
            note(
                defects,
                row.ell == i as u64,
                format!("{label}: row {i} has ell {}", row.ell),
            );
            note(
                defects,
                row.target as u128 + row.ell as u128 == n,
                format!("{label}: row {i} target {} != n - ell", row.target),
            );
            let truth = scan(a, cert.b, row.target);
            note(
                defects,
                truth == row.representable,
                format!("{label}: row {i} representability should be {truth}"),
            );
            if let (Some(w), Exponent::Finite(av)) = (row.witness, a) {
                note(
                    defects,
                    av as u128 * (w.x as u128 + 1) + cert.b as u128 * w.y as u128
                        == row.target as u128,
                    format!("{label}: row {i} witness does not solve the equation"),
                );
            }
            note(
                defects,
                row.witness.is_some() == row.representable,
                format!("{label}: row {i} witness presence disagrees with verdict"),
            );
            all_blocked &= !truth;
        }
        all_blocked
    }
    let mut all_blocked = check_rows(&mut defects, cert, ell_max, "rows", cert.a, &cert.rows);
    match (&cert.a_positive, cert.a) {
        (Some(v), Exponent::Finite(0)) => {
            note(
                &mut defects,
                v.a == cert.b,
                "positive variant must use a = b".into(),
            );
            all_blocked &= check_rows(
                &mut defects,
                cert,
                ell_max,
                "a_positive rows",
                Exponent::Finite(cert.b),
                &v.rows,
            );
        }
        (None, Exponent::Finite(0)) => {
            note(
                &mut defects,
                false,
                "a = 0 requires the positive variant".into(),
            );
            all_blocked = false;
        }
        (Some(_), _) => note(
            &mut defects,
            false,
            "positive variant present although a != 0".into(),
        ),
        (None, _) => {}
    }
    let expected = if all_blocked && p > 2 * n + 1 {
        Verdict::Nonexistence
    } else {
        Verdict::Inconclusive
    };
    note(
        &mut defects,
        cert.conclusion == expected,
        format!("conclusion should be {expected:?}"),
    );
    if defects.is_empty() {
        Ok(())
    } else {
        Err(defects)
    }
}

fn note(defects: &mut Vec<String>, ok: bool, what: String) {
    if !ok {
        defects.push(what);
    }
}
