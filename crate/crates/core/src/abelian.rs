//! Finite abelian groups in invariant-factor form.
//!
//! A group is stored as its chain of invariant factors `d_1 | d_2 | ... | d_k`
//! (each `d_i >= 2`) and its elements as residue tuples. Elements are ranked
//! densely in mixed radix with the first factor most significant, so that
//! `(r_1, ..., r_k)` has rank `r_1 * d_2 * ... * d_k + ... + r_k`. Group-ring
//! coefficient arrays and every file format depend on that order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroupSpec", into = "RawGroupSpec")]
pub struct GroupSpec {
    factors: Vec<u64>,
    order: u64,
}

#[derive(Serialize, Deserialize)]
struct RawGroupSpec {
    invariant_factors: Vec<u64>,
}

impl TryFrom<RawGroupSpec> for GroupSpec {
    type Error = Error;

    fn try_from(raw: RawGroupSpec) -> Result<Self> {
        GroupSpec::new(raw.invariant_factors)
    }
}

impl From<GroupSpec> for RawGroupSpec {
    fn from(spec: GroupSpec) -> Self {
        RawGroupSpec {
            invariant_factors: spec.factors,
        }
    }
}

/// An element of a [`GroupSpec`], stored as reduced residues.
///
/// The element does not carry its group; every operation goes through the
/// owning `GroupSpec`, which rejects tuples of the wrong shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    pub fn into_residues(self) -> Vec<u64> {
        self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl GroupSpec {
    /// Builds a group from an invariant-factor chain.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        for (i, &d) in invariant_factors.iter().enumerate() {
            if d < 2 {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {d} at position {i} is smaller than 2"
                )));
            }
            if i > 0 && d % invariant_factors[i - 1] != 0 {
                return Err(Error::InvalidGroup(format!(
                    "invariant factors {invariant_factors:?} do not form a divisibility chain"
                )));
            }
        }
        let order = invariant_factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidGroup("group order overflows u64".into()))?;
        Ok(GroupSpec {
            factors: invariant_factors,
            order,
        })
    }

    /// The cyclic group `Z_m`; `m = 1` gives the trivial group.
    pub fn cyclic(m: u64) -> Result<Self> {
        match m {
            0 => Err(Error::InvalidGroup("order must be positive".into())),
            1 => GroupSpec::new(Vec::new()),
            _ => GroupSpec::new(vec![m]),
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Largest element order in the group.
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    /// Builds an element, reducing each (possibly negative) input mod `d_i`.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.factors.len() {
            return Err(self.mismatch_i64(residues));
        }
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.factors)
                .map(|(&r, &d)| r.rem_euclid(d as i64) as u64)
                .collect(),
        ))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.factors.len() && g.0.iter().zip(&self.factors).all(|(r, d)| r < d)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                element: g.0.clone(),
                factors: self.factors.clone(),
            })
        }
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.factors)
                .map(|((a, b), d)| (a + b) % d)
                .collect(),
        ))
    }

    pub fn negate(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(a, d)| (d - a) % d)
                .collect(),
        ))
    }

    /// `t * g` in additive notation; `t` may be negative.
    pub fn scalar_mul(&self, t: i64, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(&a, &d)| mul_mod_signed(t, a, d))
                .collect(),
        ))
    }

    pub fn element_order(&self, g: &GroupElement) -> Result<u64> {
        self.check(g)?;
        Ok(g.0
            .iter()
            .zip(&self.factors)
            .map(|(&a, &d)| d / gcd(a, d))
            .fold(1, lcm))
    }

    pub fn rank_of(&self, g: &GroupElement) -> Result<u64> {
        self.check(g)?;
        Ok(g.0
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&r, &d)| acc * d + r))
    }

    pub fn element_at(&self, rank: u64) -> Result<GroupElement> {
        if rank >= self.order {
            return Err(Error::RankOutOfRange {
                rank,
                order: self.order,
            });
        }
        let mut residues = vec![0; self.factors.len()];
        let mut rest = rank;
        for (slot, &d) in residues.iter_mut().zip(&self.factors).rev() {
            *slot = rest % d;
            rest /= d;
        }
        Ok(GroupElement(residues))
    }

    /// All elements in rank order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |r| self.element_at(r).expect("rank in range"))
    }

    fn mismatch_i64(&self, residues: &[i64]) -> Error {
        Error::SpecMismatch {
            element: residues.iter().map(|&r| r as u64).collect(),
            factors: self.factors.clone(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z_1");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z_{d}")?;
        }
        Ok(())
    }
}

/// Precomputed rank arithmetic for a group, used by the dense group-ring and
/// search code paths. Ranks are `usize` indices into coefficient arrays.
#[derive(Debug, Clone)]
pub struct RankTable {
    factors: Vec<u64>,
    // weight of digit i in the mixed-radix rank
    weights: Vec<u64>,
    order: usize,
    neg: Vec<usize>,
}

impl RankTable {
    pub fn new(spec: &GroupSpec) -> Self {
        let factors = spec.factors.clone();
        let mut weights = vec![1u64; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * factors[i + 1];
        }
        let order = spec.order as usize;
        let mut table = RankTable {
            factors,
            weights,
            order,
            neg: Vec::new(),
        };
        table.neg = (0..order).map(|r| table.scalar_mul(-1, r)).collect();
        table
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn neg(&self, r: usize) -> usize {
        self.neg[r]
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.factors.len() == 1 {
            let s = a + b;
            return if s >= self.order { s - self.order } else { s };
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        for (&d, &w) in self.factors.iter().zip(&self.weights) {
            let (da, db) = (a / w, b / w);
            a %= w;
            b %= w;
            out += ((da + db) % d) * w;
        }
        out as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    pub fn scalar_mul(&self, t: i64, r: usize) -> usize {
        let mut rest = r as u64;
        let mut out = 0u64;
        for (&d, &w) in self.factors.iter().zip(&self.weights) {
            let digit = rest / w;
            rest %= w;
            out += mul_mod_signed(t, digit, d) * w;
        }
        out as usize
    }
}

fn mul_mod_signed(t: i64, a: u64, d: u64) -> u64 {
    let t = t.rem_euclid(d as i64) as u128;
    ((t * a as u128) % d as u128) as u64
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Prime factorisation by trial division, ascending primes.
pub(crate) fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Integer partitions of `a` as non-increasing part lists, in reverse
/// lexicographic order (`[a]` first).
fn partitions(a: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(a, a, &mut Vec::new(), &mut out);
    out
}

/// One [`GroupSpec`] per isomorphism class of abelian groups of `order`.
///
/// Classes are listed by number of invariant factors, then lexicographically
/// by factor chain, so the cyclic group always comes first.
pub fn enumerate_abelian_groups(order: u64) -> Result<Vec<GroupSpec>> {
    if order == 0 {
        return Err(Error::InvalidArgument(
            "group order must be positive".into(),
        ));
    }
    let primes = factorize(order);
    let mut combos: Vec<Vec<(u64, Vec<u32>)>> = vec![Vec::new()];
    for &(p, e) in &primes {
        let parts = partitions(e);
        combos = combos
            .into_iter()
            .flat_map(|c| {
                parts.iter().map(move |lambda| {
                    let mut c = c.clone();
                    c.push((p, lambda.clone()));
                    c
                })
            })
            .collect();
    }
    let mut specs = combos
        .into_iter()
        .map(|combo| {
            let len = combo.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
            // factor j (from the largest) collects the j-th largest part of every prime
            let mut factors: Vec<u64> = (0..len)
                .map(|j| {
                    combo
                        .iter()
                        .map(|(p, l)| l.get(j).map_or(1, |&k| p.pow(k)))
                        .product()
                })
                .collect();
            factors.reverse();
            GroupSpec::new(factors)
        })
        .collect::<Result<Vec<_>>>()?;
    specs.sort_by(|a, b| {
        a.factors
            .len()
            .cmp(&b.factors.len())
            .then_with(|| a.factors.cmp(&b.factors))
    });
    Ok(specs)
}
