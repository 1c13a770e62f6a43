//! Integer group ring `Z[G]` over a finite abelian group.
//!
//! Elements are dense coefficient vectors indexed by element rank (see
//! [`GroupSpec::rank_of`]). Arithmetic is exact; every product checks for
//! `i64` overflow.

use serde::{Deserialize, Serialize};

use crate::abelian::{GroupElement, GroupSpec, RankTable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRingElement", into = "RawRingElement")]
pub struct GroupRingElement {
    spec: GroupSpec,
    coefficients: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawRingElement {
    group: GroupSpec,
    coefficients: Vec<i64>,
}

impl TryFrom<RawRingElement> for GroupRingElement {
    type Error = Error;

    fn try_from(raw: RawRingElement) -> Result<Self> {
        GroupRingElement::from_coefficients(raw.group, raw.coefficients)
    }
}

impl From<GroupRingElement> for RawRingElement {
    fn from(a: GroupRingElement) -> Self {
        RawRingElement {
            group: a.spec,
            coefficients: a.coefficients,
        }
    }
}

impl GroupRingElement {
    pub fn zero(spec: &GroupSpec) -> Self {
        GroupRingElement {
            spec: spec.clone(),
            coefficients: vec![0; spec.order() as usize],
        }
    }

    /// The identity element `e` as a ring element (the multiplicative unit).
    pub fn unit(spec: &GroupSpec) -> Self {
        let mut a = Self::zero(spec);
        a.coefficients[0] = 1;
        a
    }

    /// `G` itself: every coefficient 1.
    pub fn all_ones(spec: &GroupSpec) -> Self {
        GroupRingElement {
            spec: spec.clone(),
            coefficients: vec![1; spec.order() as usize],
        }
    }

    pub fn from_coefficients(spec: GroupSpec, coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.len() as u64 != spec.order() {
            return Err(Error::OrderMismatch {
                expected: spec.order(),
                found: coefficients.len() as u64,
            });
        }
        Ok(GroupRingElement { spec, coefficients })
    }

    /// Coefficient of `g` is the multiplicity of `g` in `elements`.
    pub fn from_multiset(spec: &GroupSpec, elements: &[GroupElement]) -> Result<Self> {
        let mut a = Self::zero(spec);
        for g in elements {
            let r = spec.rank_of(g)? as usize;
            a.coefficients[r] += 1;
        }
        Ok(a)
    }

    pub(crate) fn from_ranks(spec: &GroupSpec, ranks: impl IntoIterator<Item = usize>) -> Self {
        let mut a = Self::zero(spec);
        for r in ranks {
            a.coefficients[r] += 1;
        }
        a
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn coefficient(&self, g: &GroupElement) -> Result<i64> {
        Ok(self.coefficients[self.spec.rank_of(g)? as usize])
    }

    pub fn identity_coefficient(&self) -> i64 {
        self.coefficients[0]
    }

    /// Ranks with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(r, _)| r)
            .collect()
    }

    pub fn support_elements(&self) -> Vec<GroupElement> {
        self.support()
            .into_iter()
            .map(|r| self.spec.element_at(r as u64).expect("rank in range"))
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.coefficients.iter().filter(|&&c| c != 0).count()
    }

    /// Sum of all coefficients (the augmentation).
    pub fn total_mass(&self) -> i128 {
        self.coefficients.iter().map(|&c| c as i128).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }

    /// Rejects anything that is not the indicator of a set.
    pub fn ensure_zero_one(&self) -> Result<()> {
        match self
            .coefficients
            .iter()
            .enumerate()
            .find(|(_, &c)| c != 0 && c != 1)
        {
            Some((rank, &coefficient)) => Err(Error::NotASet { rank, coefficient }),
            None => Ok(()),
        }
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.spec.invariant_factors().to_vec(),
                right: other.spec.invariant_factors().to_vec(),
            })
        }
    }

    /// `c1 * a + c2 * b`, coefficientwise.
    pub fn linear_combine(c1: i64, a: &Self, c2: i64, b: &Self) -> Result<Self> {
        a.same_group(b)?;
        let coefficients = a
            .coefficients
            .iter()
            .zip(&b.coefficients)
            .map(|(&x, &y)| {
                c1.checked_mul(x)
                    .zip(c2.checked_mul(y))
                    .and_then(|(u, v)| u.checked_add(v))
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupRingElement {
            spec: a.spec.clone(),
            coefficients,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(1, self, 1, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(1, self, -1, other)
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        Self::linear_combine(c, self, 0, self)
    }

    /// Convolution product. Runs over the support of the sparser operand
    /// against the support of the other.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let table = RankTable::new(&self.spec);
        self.multiply_with(other, &table)
    }

    pub(crate) fn multiply_with(&self, other: &Self, table: &RankTable) -> Result<Self> {
        let (sparse, dense) = if self.support_size() <= other.support_size() {
            (self, other)
        } else {
            (other, self)
        };
        let dense_support = dense.support();
        let mut out = vec![0i64; self.coefficients.len()];
        for g in sparse.support() {
            let a = sparse.coefficients[g];
            for &h in &dense_support {
                let term = a
                    .checked_mul(dense.coefficients[h])
                    .ok_or(Error::Overflow)?;
                let slot = &mut out[table.add(g, h)];
                *slot = slot.checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(GroupRingElement {
            spec: self.spec.clone(),
            coefficients: out,
        })
    }

    /// `A^(t) = sum a_g (t*g)`.
    pub fn power_map(&self, t: i64) -> Self {
        let table = RankTable::new(&self.spec);
        self.power_map_with(t, &table)
    }

    pub(crate) fn power_map_with(&self, t: i64, table: &RankTable) -> Self {
        let mut out = vec![0i64; self.coefficients.len()];
        for g in self.support() {
            out[table.scalar_mul(t, g)] += self.coefficients[g];
        }
        GroupRingElement {
            spec: self.spec.clone(),
            coefficients: out,
        }
    }

    /// `A*`: the identity coefficient dropped.
    pub fn star(&self) -> Self {
        let mut out = self.clone();
        out.coefficients[0] = 0;
        out
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: i64) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!(
                "modulus {p} must be at least 2"
            )));
        }
        Ok(GroupRingElement {
            spec: self.spec.clone(),
            coefficients: self.coefficients.iter().map(|c| c.rem_euclid(p)).collect(),
        })
    }
}

/// Per-condition outcome of the perfect-code criterion
/// `|T| = 2n+1`, `e in T`, `T = T^(-1)`, `T^2 = 2G + T^(2) + (2n-2)e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem3Report {
    pub n: u64,
    pub size: usize,
    pub size_ok: bool,
    pub contains_identity: bool,
    pub symmetric: bool,
    pub square_identity: bool,
    /// Positions where `T^2` and `2G + T^(2) + (2n-2)e` differ.
    pub square_mismatches: usize,
}

impl Theorem3Report {
    pub fn passed(&self) -> bool {
        self.size_ok && self.contains_identity && self.symmetric && self.square_identity
    }
}

/// `2n^2 + 1`, the order every candidate group must have.
pub fn tiling_group_order(n: u64) -> u64 {
    2 * n * n + 1
}

/// Evaluates the four group-ring conditions for `T` in a group of order `2n^2+1`.
///
/// A wrong group order is an error rather than a failed report; so is a `T`
/// with a coefficient other than 0 or 1.
pub fn check_theorem3(t: &GroupRingElement, n: u64) -> Result<Theorem3Report> {
    let expected = tiling_group_order(n);
    if t.spec.order() != expected {
        return Err(Error::OrderMismatch {
            expected,
            found: t.spec.order(),
        });
    }
    t.ensure_zero_one()?;
    let table = RankTable::new(&t.spec);
    let size = t.support_size();
    let inverse = t.power_map_with(-1, &table);
    let square = t.multiply_with(t, &table)?;
    let mut target = GroupRingElement::linear_combine(
        2,
        &GroupRingElement::all_ones(&t.spec),
        1,
        &t.power_map_with(2, &table),
    )?;
    target.coefficients[0] += 2 * n as i64 - 2;
    let square_mismatches = square
        .coefficients
        .iter()
        .zip(&target.coefficients)
        .filter(|(a, b)| a != b)
        .count();
    Ok(Theorem3Report {
        n,
        size,
        size_ok: size as u64 == 2 * n + 1,
        contains_identity: t.coefficients[0] == 1,
        symmetric: inverse == *t,
        square_identity: square_mismatches == 0,
        square_mismatches,
    })
}

/// [`check_theorem3`] for `T` given as an element list; repeated elements are rejected.
pub fn check_theorem3_elements(
    spec: &GroupSpec,
    elements: &[GroupElement],
    n: u64,
) -> Result<Theorem3Report> {
    check_theorem3(&GroupRingElement::from_multiset(spec, elements)?, n)
}
