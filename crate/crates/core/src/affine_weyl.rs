//! The ρ-shifted affine Weyl action at level κ = h + c.
//!
//! Points are ρ-shifted (`λ + ρ`). The open fundamental alcove is
//! `{x : (x, α_i^∨) > 0 for all i, (x, θ^∨) < κ}`. Its affine walls are the
//! hyperplanes `(x, α) ∈ κZ` for positive roots α under the normalized form,
//! which reads `(x, α^∨) ∈ (2/(α,α))·κZ` in coroot terms.
//!
//! Reflection indices: 0 is the affine reflection
//! `s_0(x) = x − ((x, θ^∨) − κ)·θ`, and `i + 1` is the simple reflection `s_i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};

#[derive(Debug, Clone, Copy)]
pub struct AffineContext<'a> {
    rs: &'a RootSystem,
    level: u32,
    kappa: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionStatus {
    Interior,
    Wall,
}

/// Which violated wall to reflect in when several are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReductionOrder {
    #[default]
    LowestIndex,
    HighestIndex,
}

/// Result of reducing a point to the fundamental alcove.
///
/// For `Wall`, `reduced` is the point reached on the alcove boundary and
/// `sign` is 0; neither carries meaning beyond that.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveReduction<T = i64> {
    pub status: ReductionStatus,
    pub reduced: Vec<T>,
    pub length: u64,
    pub sign: i8,
    /// Reflection indices in the order they were applied to the input.
    pub word: Vec<usize>,
}

impl<T> AlcoveReduction<T> {
    pub fn is_interior(&self) -> bool {
        self.status == ReductionStatus::Interior
    }
}

/// Total degree of a tensor of insertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Vanishes,
    Degree(u64),
}

impl<'a> AffineContext<'a> {
    pub fn new(rs: &'a RootSystem, level: u32) -> Self {
        let kappa = level as i64 + rs.dual_coxeter() as i64;
        Self { rs, level, kappa }
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn kappa(&self) -> i64 {
        self.kappa
    }

    /// Whether `x` lies on an affine wall at level κ.
    pub fn on_wall(&self, x: &[i64]) -> bool {
        on_wall_at(self.rs, x, self.kappa)
    }

    pub fn on_wall_rational(&self, x: &[BigRational]) -> Result<bool> {
        let (scaled, d) = clear_denominators(self.rs, x)?;
        Ok(on_wall_at(self.rs, &scaled, self.kappa * d))
    }

    /// Whether `x` lies in the open fundamental alcove.
    pub fn is_interior_point(&self, x: &[i64]) -> bool {
        x.iter().all(|&c| c > 0) && self.rs.theta_level(x) < self.kappa
    }

    /// `s_0` at level κ, in place.
    pub fn reflect_affine(&self, x: &mut [i64]) {
        reflect_affine_at(self.rs, x, self.kappa);
    }

    /// Apply a single reflection by index (0 affine, `i + 1` simple).
    pub fn reflect(&self, x: &mut [i64], index: usize) {
        if index == 0 {
            self.reflect_affine(x);
        } else {
            self.rs.reflect_simple(x, index - 1);
        }
    }

    pub fn alcove_reduce(&self, x: &[i64]) -> Result<AlcoveReduction> {
        self.alcove_reduce_with(x, ReductionOrder::LowestIndex)
    }

    pub fn alcove_reduce_with(&self, x: &[i64], order: ReductionOrder) -> Result<AlcoveReduction> {
        self.rs.check_rank(x.len())?;
        reduce_at(self.rs, x, self.kappa, order)
    }

    /// Reduction of a rational point. Scales to an integral point at level
    /// `d·κ`, reduces there, and scales back.
    pub fn alcove_reduce_rational(
        &self,
        x: &[BigRational],
        order: ReductionOrder,
    ) -> Result<AlcoveReduction<BigRational>> {
        let (scaled, d) = clear_denominators(self.rs, x)?;
        let red = reduce_at(self.rs, &scaled, self.kappa * d, order)?;
        let den = BigInt::from(d);
        Ok(AlcoveReduction {
            status: red.status,
            reduced: red
                .reduced
                .into_iter()
                .map(|c| BigRational::new(BigInt::from(c), den.clone()))
                .collect(),
            length: red.length,
            sign: red.sign,
            word: red.word,
        })
    }

    /// Undo a reduction: apply the recorded word in reverse to the reduced point.
    pub fn unreduce(&self, red: &AlcoveReduction) -> Vec<i64> {
        let mut y = red.reduced.clone();
        for &i in red.word.iter().rev() {
            self.reflect(&mut y, i);
        }
        y
    }

    /// Sum of reduction lengths of every `λ + ρ`, or `Vanishes` if one of them
    /// sits on a wall.
    pub fn total_degree(&self, lambdas: &[Weight]) -> Result<Degree> {
        self.total_degree_with(lambdas, ReductionOrder::LowestIndex)
    }

    pub fn total_degree_with(&self, lambdas: &[Weight], order: ReductionOrder) -> Result<Degree> {
        let mut total = 0;
        for lam in lambdas {
            self.rs.check_dominant(lam)?;
            let red = self.alcove_reduce_with(&lam.shifted(1).0, order)?;
            match red.status {
                ReductionStatus::Wall => return Ok(Degree::Vanishes),
                ReductionStatus::Interior => total += red.length,
            }
        }
        Ok(Degree::Degree(total))
    }
}

fn on_wall_at(rs: &RootSystem, x: &[i64], kappa: i64) -> bool {
    rs.positive_roots()
        .iter()
        .any(|a| rs.pair_coroot(x, a).rem_euclid(a.wall_factor * kappa) == 0)
}

fn reflect_affine_at(rs: &RootSystem, x: &mut [i64], kappa: i64) {
    let theta = rs.highest_root();
    let p = rs.theta_level(x) - kappa;
    if p != 0 {
        for (xj, tj) in x.iter_mut().zip(&theta.omega) {
            *xj -= p * tj;
        }
    }
}

fn reduce_at(rs: &RootSystem, x: &[i64], kappa: i64, order: ReductionOrder) -> Result<AlcoveReduction> {
    let wall = on_wall_at(rs, x, kappa);
    // Each step crosses exactly one of the hyperplanes strictly separating x
    // from the alcove; along α there are at most |(x, α)|/κ + 1 of them.
    let separating: u64 = rs
        .positive_roots()
        .iter()
        .map(|a| (rs.pair_coroot(x, a).unsigned_abs() / (a.wall_factor * kappa) as u64) + 1)
        .sum();
    let bound = 10 * kappa as u64 * rs.positive_roots().len() as u64 + separating;

    let r = rs.rank();
    let mut y = x.to_vec();
    let mut word = Vec::new();
    loop {
        let affine_violated = rs.theta_level(&y) > kappa;
        let pick = match order {
            ReductionOrder::LowestIndex => {
                if affine_violated {
                    Some(0)
                } else {
                    (0..r).find(|&i| y[i] < 0).map(|i| i + 1)
                }
            }
            ReductionOrder::HighestIndex => (0..r)
                .rev()
                .find(|&i| y[i] < 0)
                .map(|i| i + 1)
                .or(if affine_violated { Some(0) } else { None }),
        };
        let Some(index) = pick else { break };
        if index == 0 {
            reflect_affine_at(rs, &mut y, kappa);
        } else {
            rs.reflect_simple(&mut y, index - 1);
        }
        word.push(index);
        if word.len() as u64 > bound {
            return Err(Error::Internal(format!(
                "alcove reduction of {x:?} at level {kappa} exceeded {bound} steps"
            )));
        }
    }
    // The walk ends in the closed alcove; touching its boundary must coincide
    // with the exact wall test.
    let touches = y.contains(&0) || rs.theta_level(&y) == kappa;
    if touches != wall {
        return Err(Error::Internal(format!(
            "wall test ({wall}) disagrees with reduction of {x:?} to {y:?} at level {kappa}"
        )));
    }
    let length = word.len() as u64;
    let (status, sign) = if wall {
        (ReductionStatus::Wall, 0)
    } else {
        (ReductionStatus::Interior, if length % 2 == 0 { 1 } else { -1 })
    };
    Ok(AlcoveReduction { status, reduced: y, length, sign, word })
}

fn clear_denominators(rs: &RootSystem, x: &[BigRational]) -> Result<(Vec<i64>, i64)> {
    rs.check_rank(x.len())?;
    let d = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let d_i = d.to_i64().ok_or(Error::Overflow("rational alcove reduction"))?;
    let scaled = x
        .iter()
        .map(|q| {
            let v = q * BigRational::from_integer(d.clone());
            debug_assert!(v.is_integer());
            v.to_integer().to_i64().ok_or(Error::Overflow("rational alcove reduction"))
        })
        .collect::<Result<Vec<i64>>>()?;
    // Keep the scale positive so κ·d stays a valid level.
    debug_assert!(d.is_positive() && !d.is_zero());
    Ok((scaled, d_i))
}
