//! Homomorphisms `phi: Z^n -> G` given by the images of the standard basis,
//! and the bijectivity test that makes `ker phi` a lattice tiling by a ball.

use serde::{Deserialize, Serialize};

use crate::abelian::{GroupElement, GroupSpec, RankTable};
use crate::ball::ErrorBall;
use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHomomorphism", into = "RawHomomorphism")]
pub struct TilingHomomorphism {
    n: usize,
    spec: GroupSpec,
    images: Vec<GroupElement>,
}

#[derive(Serialize, Deserialize)]
struct RawHomomorphism {
    n: usize,
    group: GroupSpec,
    images: Vec<GroupElement>,
}

impl TryFrom<RawHomomorphism> for TilingHomomorphism {
    type Error = Error;

    fn try_from(raw: RawHomomorphism) -> Result<Self> {
        if raw.n != raw.images.len() {
            return Err(Error::InvalidHomomorphism(format!(
                "n = {} but {} images given",
                raw.n,
                raw.images.len()
            )));
        }
        TilingHomomorphism::new(raw.group, raw.images)
    }
}

impl From<TilingHomomorphism> for RawHomomorphism {
    fn from(phi: TilingHomomorphism) -> Self {
        RawHomomorphism {
            n: phi.n,
            group: phi.spec,
            images: phi.images,
        }
    }
}

impl TilingHomomorphism {
    pub fn new(spec: GroupSpec, images: Vec<GroupElement>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidHomomorphism(
                "dimension must be at least 1".into(),
            ));
        }
        for g in &images {
            spec.check(g)?;
        }
        Ok(TilingHomomorphism {
            n: images.len(),
            spec,
            images,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    fn image_ranks(&self) -> Vec<usize> {
        self.images
            .iter()
            .map(|g| self.spec.rank_of(g).expect("validated") as usize)
            .collect()
    }

    /// `phi(v) = sum v_i a_i`.
    pub fn apply(&self, v: &[i64]) -> Result<GroupElement> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        let table = RankTable::new(&self.spec);
        let r = self.apply_ranks(v, &self.image_ranks(), &table);
        self.spec.element_at(r as u64)
    }

    fn apply_ranks(&self, v: &[i64], images: &[usize], table: &RankTable) -> usize {
        v.iter()
            .zip(images)
            .filter(|(&c, _)| c != 0)
            .fold(0, |acc, (&c, &a)| table.add(acc, table.scalar_mul(c, a)))
    }

    /// `e + sum_i (a_i + (-a_i))` as a ring element. Coefficients above 1
    /// mean the images collide and are left visible.
    pub fn induced_code_set(&self) -> GroupRingElement {
        let table = RankTable::new(&self.spec);
        let ranks = self.image_ranks();
        let all = std::iter::once(0)
            .chain(ranks.iter().copied())
            .chain(ranks.iter().map(|&r| table.neg(r)));
        GroupRingElement::from_ranks(&self.spec, all)
    }

    /// Maps every ball vector and reports whether the restriction of `phi`
    /// to the ball is a bijection onto `G`.
    pub fn verify_tiling(&self, ball: &ErrorBall) -> Result<VerificationReport> {
        if ball.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: ball.n,
            });
        }
        let order = self.spec.order();
        let reason = (ball.len() as u64 != order).then(|| {
            format!(
                "ball has {} vectors but the group has order {}",
                ball.len(),
                order
            )
        });
        let table = RankTable::new(&self.spec);
        let images = self.image_ranks();
        // first ball vector hitting each rank
        let mut hit: Vec<Option<usize>> = vec![None; order as usize];
        let mut first_collision = None;
        let mut collision_count = 0u64;
        for (i, v) in ball.vectors.iter().enumerate() {
            let r = self.apply_ranks(v, &images, &table);
            match hit[r] {
                None => hit[r] = Some(i),
                Some(j) => {
                    collision_count += 1;
                    if first_collision.is_none() {
                        first_collision = Some(Collision {
                            first: ball.vectors[j].clone(),
                            second: v.clone(),
                            element: self.spec.element_at(r as u64)?,
                        });
                    }
                }
            }
        }
        let uncovered = hit
            .iter()
            .enumerate()
            .filter(|(_, h)| h.is_none())
            .map(|(r, _)| self.spec.element_at(r as u64))
            .collect::<Result<Vec<_>>>()?;
        let collisions: Vec<Collision> = first_collision.into_iter().collect();
        Ok(VerificationReport {
            bijective: collisions.is_empty() && uncovered.is_empty(),
            ball_size: ball.len() as u64,
            group_order: order,
            collision_count,
            collisions,
            uncovered,
            reason,
        })
    }

    /// Lower-triangular reduced basis of `ker phi`, one row per dimension.
    ///
    /// Row `i` is `(c_0, .., c_{i-1}, d_i, 0, .., 0)` where `d_i` is the order
    /// of `a_i` modulo `<a_0, .., a_{i-1}>` and `0 <= c_j < d_j`. The product
    /// of the diagonal is the size of the image of `phi`.
    pub fn kernel_basis(&self) -> KernelBasis {
        let table = RankTable::new(&self.spec);
        let order = table.order();
        let images = self.image_ranks();
        // reduced representation of each element of the current subgroup
        let mut repr: Vec<Option<Vec<i64>>> = vec![None; order];
        repr[0] = Some(vec![0; self.n]);
        let mut members = vec![0usize];
        let mut rows = Vec::with_capacity(self.n);
        for (i, &a) in images.iter().enumerate() {
            let mut d = 1usize;
            let mut multiple = a;
            while repr[multiple].is_none() {
                multiple = table.add(multiple, a);
                d += 1;
            }
            let mut row = repr[table.neg(multiple)].clone().expect("subgroup closed");
            row[i] = d as i64;
            rows.push(row);

            let mut grown = Vec::with_capacity(members.len() * d);
            let mut shift = 0usize;
            for c in 0..d {
                for &h in &members {
                    let g = table.add(h, shift);
                    if c > 0 {
                        let mut coords = repr[h].clone().expect("member");
                        coords[i] = c as i64;
                        repr[g] = Some(coords);
                    }
                    grown.push(g);
                }
                shift = table.add(shift, a);
            }
            members = grown;
        }
        let determinant: u64 = rows.iter().enumerate().map(|(i, r)| r[i] as u64).product();
        KernelBasis {
            surjective: determinant == self.spec.order(),
            determinant,
            rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelBasis {
    pub rows: Vec<Vec<i64>>,
    /// Index of the kernel in `Z^n`, equal to the size of the image subgroup.
    pub determinant: u64,
    pub surjective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub first: Vec<i64>,
    pub second: Vec<i64>,
    pub element: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub bijective: bool,
    pub ball_size: u64,
    pub group_order: u64,
    /// Number of ball vectors that landed on an already-hit element.
    pub collision_count: u64,
    /// First witness pair only.
    pub collisions: Vec<Collision>,
    pub uncovered: Vec<GroupElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::enumerate_abelian_groups;
    use crate::ball::generate_ball;

    fn phi(factors: Vec<u64>, images: &[&[i64]]) -> TilingHomomorphism {
        let spec = GroupSpec::new(factors).unwrap();
        let images = images.iter().map(|r| spec.element(r).unwrap()).collect();
        TilingHomomorphism::new(spec, images).unwrap()
    }

    #[test]
    fn induced_code_sets() {
        let p = phi(vec![3], &[&[1]]);
        assert_eq!(p.induced_code_set().coefficients(), &[1, 1, 1]);
        let q = phi(vec![19], &[&[2], &[2], &[5]]);
        let t = q.induced_code_set();
        assert_eq!(t.coefficients()[2], 2);
        assert_eq!(t.coefficients()[17], 2);
        assert!(t.ensure_zero_one().is_err());
    }

    #[test]
    fn trivial_images_collide() {
        let p = phi(vec![19], &[&[0], &[0], &[0]]);
        let ball = generate_ball(3, 2, 1, 1).unwrap();
        let report = p.verify_tiling(&ball).unwrap();
        assert!(!report.bijective);
        assert_eq!(report.collision_count, 18);
        assert_eq!(report.collisions.len(), 1);
        assert_eq!(report.uncovered.len(), 18);
        assert!(report.reason.is_none());
    }

    #[test]
    fn size_mismatch_is_reported() {
        let p = phi(vec![5], &[&[1], &[2], &[3]]);
        let report = p
            .verify_tiling(&generate_ball(3, 2, 1, 1).unwrap())
            .unwrap();
        assert!(!report.bijective);
        assert!(report.reason.is_some());
        assert!(p
            .verify_tiling(&generate_ball(2, 2, 1, 1).unwrap())
            .is_err());
    }

    #[test]
    fn one_dimensional_tiling() {
        // B(1,1,1,1) = {-1,0,1} tiles Z by 3Z
        let p = phi(vec![3], &[&[1]]);
        assert!(
            p.verify_tiling(&generate_ball(1, 1, 1, 1).unwrap())
                .unwrap()
                .bijective
        );
        let k = p.kernel_basis();
        assert_eq!(k.rows, vec![vec![3]]);
        assert_eq!(k.determinant, 3);
        assert!(k.surjective);
        let z = phi(vec![3], &[&[0]]);
        let k = z.kernel_basis();
        assert_eq!(k.rows, vec![vec![1]]);
        assert!(!k.surjective);
    }

    #[test]
    fn kernel_basis_shape_and_membership() {
        for spec in enumerate_abelian_groups(36).unwrap() {
            for seed in 0..12u64 {
                let images: Vec<_> = (0..4)
                    .map(|i| {
                        spec.element_at((seed * 7 + i * 11 + i * i * seed) % spec.order())
                            .unwrap()
                    })
                    .collect();
                let p = TilingHomomorphism::new(spec.clone(), images.clone()).unwrap();
                let k = p.kernel_basis();
                for (i, row) in k.rows.iter().enumerate() {
                    assert!(row[i] > 0);
                    assert!(row[i + 1..].iter().all(|&x| x == 0));
                    for j in 0..i {
                        assert!(row[j] >= 0 && row[j] < k.rows[j][j]);
                    }
                    assert_eq!(p.apply(row).unwrap(), spec.identity());
                }
                // image subgroup by closure
                let mut image = std::collections::BTreeSet::new();
                image.insert(spec.identity());
                loop {
                    let before = image.len();
                    let snapshot: Vec<_> = image.iter().cloned().collect();
                    for g in &snapshot {
                        for a in &images {
                            image.insert(spec.add(g, a).unwrap());
                        }
                    }
                    if image.len() == before {
                        break;
                    }
                }
                assert_eq!(k.determinant, image.len() as u64);
            }
        }
    }

    #[test]
    fn kernel_basis_generates_every_kernel_vector_in_a_box() {
        let p = phi(vec![2, 6], &[&[1, 2], &[0, 3], &[1, 1]]);
        let k = p.kernel_basis();
        let spec = p.spec().clone();
        for x0 in -6i64..=6 {
            for x1 in -6i64..=6 {
                for x2 in -6i64..=6 {
                    let x = [x0, x1, x2];
                    if p.apply(&x).unwrap() != spec.identity() {
                        continue;
                    }
                    // back-substitute through the triangular basis
                    let mut rest = x.to_vec();
                    for i in (0..3).rev() {
                        let d = k.rows[i][i];
                        assert_eq!(rest[i] % d, 0, "{x:?} not in lattice");
                        let q = rest[i] / d;
                        for j in 0..=i {
                            rest[j] -= q * k.rows[i][j];
                        }
                    }
                    assert!(rest.iter().all(|&v| v == 0));
                }
            }
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let p = phi(vec![3, 3], &[&[1, 0], &[0, 1]]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"group":{"invariant_factors":[3,3]},"images":[[1,0],[0,1]]}"#
        );
        assert_eq!(
            serde_json::from_str::<TilingHomomorphism>(&json).unwrap(),
            p
        );
        let bad = r#"{"n":3,"group":{"invariant_factors":[3,3]},"images":[[1,0],[0,1]]}"#;
        assert!(serde_json::from_str::<TilingHomomorphism>(bad).is_err());
        let bad = r#"{"n":1,"group":{"invariant_factors":[3,3]},"images":[[1,5]]}"#;
        assert!(serde_json::from_str::<TilingHomomorphism>(bad).is_err());
    }
}
