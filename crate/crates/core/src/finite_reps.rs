//! Finite-dimensional representations: Weyl dimensions, Freudenthal weight
//! multiplicities, Klimyk tensor products and character values.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::f64::consts::PI;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{DominantMults, RootSystem, Weight};

/// Default cap on the number of distinct weights of a single irrep.
pub const DEFAULT_WEIGHT_CAP: usize = 1_000_000;

/// A finite integer combination of irreducible characters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VirtualCharacter {
    terms: BTreeMap<Weight, i64>,
}

impl VirtualCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn irreducible(w: Weight) -> Self {
        let mut v = Self::new();
        v.add(w, 1);
        v
    }

    pub fn add(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn coefficient(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Σ c_ν · dim V(ν).
    pub fn dimension(&self, rs: &RootSystem) -> Result<i128> {
        let mut total = 0i128;
        for (w, c) in self.iter() {
            let d = weyl_dimension(rs, w)? as i128;
            total += c as i128 * d;
        }
        Ok(total)
    }
}

impl FromIterator<(Weight, i64)> for VirtualCharacter {
    fn from_iter<I: IntoIterator<Item = (Weight, i64)>>(iter: I) -> Self {
        let mut v = Self::new();
        for (w, c) in iter {
            v.add(w, c);
        }
        v
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    weight: Weight,
    multiplicity: i64,
}

impl Serialize for VirtualCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<TermJson> = self
            .iter()
            .map(|(w, c)| TermJson { weight: w.clone(), multiplicity: c })
            .collect();
        list.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VirtualCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<TermJson>::deserialize(d)?;
        Ok(list.into_iter().map(|t| (t.weight, t.multiplicity)).collect())
    }
}

/// All weights of an irrep with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiplicities {
    pub highest: Weight,
    pub mults: BTreeMap<Weight, u64>,
}

impl WeightMultiplicities {
    pub fn total(&self) -> u128 {
        self.mults.values().map(|&m| m as u128).sum()
    }

    pub fn get(&self, w: &Weight) -> u64 {
        self.mults.get(w).copied().unwrap_or(0)
    }
}

/// Weyl dimension formula: Π_{α>0} (λ+ρ, α^∨) / (ρ, α^∨).
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    rs.check_dominant(lambda)?;
    let shifted = lambda.shifted(1);
    let rho = rs.rho();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in rs.positive_roots() {
        num *= rs.pair_coroot(&shifted.0, a);
        den *= rs.pair_coroot(&rho.0, a);
    }
    let q = &num / &den;
    if &q * &den != num {
        return Err(Error::Internal(format!("Weyl dimension of {lambda} is not an integer")));
    }
    q.to_u128().ok_or(Error::Overflow("Weyl dimension"))
}

/// Dominant weights of V(λ) with multiplicities, by Freudenthal's recursion.
///
/// Ordered by depth below λ (λ first). Results are cached per root system.
pub(crate) fn dominant_multiplicities(rs: &RootSystem, lambda: &Weight, cap: usize) -> Result<DominantMults> {
    rs.check_dominant(lambda)?;
    if let Some(hit) = rs.mult_cache.lock().expect("cache lock").get(&lambda.0) {
        return Ok(Arc::clone(hit));
    }

    // Dominant weights below λ are connected to λ through dominant weights
    // differing by positive roots.
    let roots = rs.positive_roots();
    let mut depth: HashMap<Vec<i64>, i64> = HashMap::new();
    depth.insert(lambda.0.clone(), 0);
    let mut stack = vec![lambda.0.clone()];
    while let Some(mu) = stack.pop() {
        let d = depth[&mu];
        for a in roots {
            let nu: Vec<i64> = mu.iter().zip(&a.omega).map(|(x, y)| x - y).collect();
            if nu.iter().all(|&c| c >= 0) && !depth.contains_key(&nu) {
                depth.insert(nu.clone(), d + a.height());
                stack.push(nu);
                if depth.len() > cap {
                    return Err(Error::SizeCapExceeded { cap });
                }
            }
        }
    }
    let mut order: Vec<(Vec<i64>, i64)> = depth.into_iter().collect();
    order.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));

    let lr = lambda.shifted(1).0;
    let top = rs.inner_scaled(&lr, &lr) as i128;
    let mut mult: HashMap<Vec<i64>, u64> = HashMap::with_capacity(order.len());
    let mut out = Vec::with_capacity(order.len());
    for (mu, d) in order {
        let m = if d == 0 {
            1
        } else {
            let mr: Vec<i64> = mu.iter().map(|c| c + 1).collect();
            let coef = top - rs.inner_scaled(&mr, &mr) as i128;
            let mut rhs = 0i128;
            for a in roots {
                let mut p: Vec<i64> = mu.clone();
                loop {
                    for (x, y) in p.iter_mut().zip(&a.omega) {
                        *x += y;
                    }
                    let (dom, _) = rs.to_dominant(&p);
                    let Some(&mp) = mult.get(&dom) else { break };
                    rhs += 2 * rs.inner_scaled(&p, &a.omega) as i128 * mp as i128;
                }
            }
            if coef <= 0 || rhs % coef != 0 {
                return Err(Error::Internal(format!(
                    "Freudenthal recursion for {lambda} failed at {mu:?}"
                )));
            }
            u64::try_from(rhs / coef).map_err(|_| Error::Overflow("weight multiplicity"))?
        };
        mult.insert(mu.clone(), m);
        out.push((mu, m));
    }
    let out = Arc::new(out);
    rs.mult_cache
        .lock()
        .expect("cache lock")
        .insert(lambda.0.clone(), Arc::clone(&out));
    Ok(out)
}

/// Every weight of V(λ) with its multiplicity.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<WeightMultiplicities> {
    weight_multiplicities_capped(rs, lambda, DEFAULT_WEIGHT_CAP)
}

pub fn weight_multiplicities_capped(
    rs: &RootSystem,
    lambda: &Weight,
    cap: usize,
) -> Result<WeightMultiplicities> {
    let dom = dominant_multiplicities(rs, lambda, cap)?;
    let mut mults = BTreeMap::new();
    for (mu, m) in dom.iter() {
        for w in rs.orbit_unchecked(mu) {
            mults.insert(Weight(w), *m);
            if mults.len() > cap {
                return Err(Error::SizeCapExceeded { cap });
            }
        }
    }
    Ok(WeightMultiplicities { highest: lambda.clone(), mults })
}

/// Klimyk (Racah–Speiser) decomposition of V(λ) ⊗ V(μ).
pub fn tensor_decompose(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<VirtualCharacter> {
    rs.check_dominant(lambda)?;
    rs.check_dominant(mu)?;
    rs.check_weyl_cap()?;
    // Sum over the weights of the smaller factor.
    let (big, small) = if weyl_dimension(rs, lambda)? >= weyl_dimension(rs, mu)? {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let dom = dominant_multiplicities(rs, small, DEFAULT_WEIGHT_CAP)?;
    let shifted = big.shifted(1);
    let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (nu, m) in dom.iter() {
        for w in rs.orbit_unchecked(nu) {
            let y: Vec<i64> = shifted.0.iter().zip(&w).map(|(a, b)| a + b).collect();
            let (d, steps) = rs.to_dominant(&y);
            if d.contains(&0) {
                continue;
            }
            let sign = if steps % 2 == 0 { 1 } else { -1 };
            *acc.entry(d.iter().map(|c| c - 1).collect()).or_insert(0) += sign * *m as i64;
        }
    }
    let out: VirtualCharacter = acc.into_iter().map(|(w, c)| (Weight(w), c)).collect();
    if let Some((w, c)) = out.iter().find(|(_, c)| *c < 0) {
        return Err(Error::Internal(format!("negative tensor multiplicity {c} at {w}")));
    }
    Ok(out)
}

/// χ_λ evaluated at exp(−2πi(μ+ρ)/κ), κ = k + c, as a sum over all weights of V(λ).
///
/// This equals S_{λμ}/S_{0μ}.
pub fn character_ratio(rs: &RootSystem, level: u32, lambda: &Weight, mu: &Weight) -> Result<Complex64> {
    rs.check_dominant(lambda)?;
    rs.check_dominant(mu)?;
    rs.check_weyl_cap()?;
    if rs.theta_level(&mu.0) > level as i64 {
        return Err(Error::OutsideAlcove { weight: mu.0.clone(), level });
    }
    let kappa = level as i64 + rs.dual_coxeter() as i64;
    let modulus = rs.form_scale() * kappa;
    let mr = mu.shifted(1).0;
    let dom = dominant_multiplicities(rs, lambda, DEFAULT_WEIGHT_CAP)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    for (nu, m) in dom.iter() {
        for w in rs.orbit_unchecked(nu) {
            debug_assert!(seen.insert(w.clone()));
            let n = rs.inner_scaled(&w, &mr).rem_euclid(modulus);
            let phase = -2.0 * PI * n as f64 / modulus as f64;
            sum += Complex64::from_polar(*m as f64, phase);
        }
    }
    Ok(sum)
}
