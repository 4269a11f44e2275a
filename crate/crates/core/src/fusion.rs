//! The level-k fusion ring.
//!
//! Fusion coefficients come from two independent routes: the Verlinde
//! formula over the Kac–Peterson S-matrix (floating point, rounded under a
//! residual gate) and the Kac–Walton algorithm (exact: Klimyk tensor product
//! followed by alcove reduction). The exact route is authoritative.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::affine_weyl::AffineContext;
use crate::error::{Error, Result};
use crate::finite_reps::tensor_decompose;
use crate::rootdata::{RootSystem, Weight};

/// Residual allowed when rounding a floating-point sum to an integer.
pub const ROUNDING_GATE: f64 = 1e-6;

/// Tolerance for the S-matrix structure checks.
pub const S_TOLERANCE: f64 = 1e-9;

/// A dominant weight together with the level whose alcove it lies in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevelWeight {
    pub weight: Weight,
    pub level: u32,
}

impl LevelWeight {
    pub fn new(rs: &RootSystem, weight: Weight, level: u32) -> Result<Self> {
        check_alcove(rs, &weight, level)?;
        Ok(Self { weight, level })
    }
}

pub fn in_alcove(rs: &RootSystem, w: &Weight, level: u32) -> bool {
    w.rank() == rs.rank() && w.is_dominant() && rs.theta_level(&w.0) <= level as i64
}

pub fn check_alcove(rs: &RootSystem, w: &Weight, level: u32) -> Result<()> {
    rs.check_dominant(w)?;
    if rs.theta_level(&w.0) > level as i64 {
        return Err(Error::OutsideAlcove { weight: w.0.clone(), level });
    }
    Ok(())
}

/// Dominant weights with `(λ, θ^∨) ≤ k`: by increasing level, then
/// lexicographically decreasing, so the vacuum comes first.
pub fn alcove_weights(rs: &RootSystem, level: u32) -> Vec<LevelWeight> {
    let comarks = &rs.highest_root().coroot_coeffs;
    let mut out = Vec::new();
    let mut cur = vec![0i64; rs.rank()];
    fn rec(i: usize, budget: i64, comarks: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == comarks.len() {
            out.push(cur.clone());
            return;
        }
        let mut c = 0;
        while c * comarks[i] <= budget {
            cur[i] = c;
            rec(i + 1, budget - c * comarks[i], comarks, cur, out);
            c += 1;
        }
        cur[i] = 0;
    }
    rec(0, level as i64, comarks, &mut cur, &mut out);
    out.sort_by(|a, b| rs.theta_level(a).cmp(&rs.theta_level(b)).then_with(|| b.cmp(a)));
    out.into_iter()
        .map(|w| LevelWeight { weight: Weight(w), level })
        .collect()
}

/// Modular S-matrix over the level-k alcove, in [`alcove_weights`] order.
#[derive(Debug, Clone)]
pub struct SMatrix {
    pub labels: Vec<LevelWeight>,
    pub entries: Vec<Vec<Complex64>>,
    pub tolerance: f64,
}

impl SMatrix {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.labels.iter().position(|l| &l.weight == w)
    }

    pub fn symmetry_residual(&self) -> f64 {
        let n = self.size();
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                r = r.max((self.entries[i][j] - self.entries[j][i]).norm());
            }
        }
        r
    }

    /// max |(S S†)_{ij} − δ_ij|.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.size();
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut z = Complex64::new(0.0, 0.0);
                for l in 0..n {
                    z += self.entries[i][l] * self.entries[j][l].conj();
                }
                if i == j {
                    z -= 1.0;
                }
                r = r.max(z.norm());
            }
        }
        r
    }

    /// max |(S²)_{ij} − δ_{j, conj(i)}| for the given permutation.
    pub fn square_residual(&self, conjugation: &[usize]) -> f64 {
        let n = self.size();
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut z = Complex64::new(0.0, 0.0);
                for l in 0..n {
                    z += self.entries[i][l] * self.entries[l][j];
                }
                if conjugation[i] == j {
                    z -= 1.0;
                }
                r = r.max(z.norm());
            }
        }
        r
    }

    /// Smallest first-row entry has to be real and positive.
    pub fn vacuum_row_min_real(&self) -> (f64, f64) {
        let min_re = self.entries[0].iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let max_im = self.entries[0].iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        (min_re, max_im)
    }
}

/// Index permutation `i ↦ index of labels[i]*`.
pub fn conjugation_permutation(rs: &RootSystem, labels: &[LevelWeight]) -> Vec<usize> {
    labels
        .iter()
        .map(|l| {
            let d = rs.dual(&l.weight);
            labels.iter().position(|m| m.weight == d).expect("alcove is closed under duality")
        })
        .collect()
}

/// Kac–Peterson matrix
/// `S_{λμ} ∝ Σ_w ε(w) exp(−2πi (w(λ+ρ), μ+ρ)/κ)`, with the prefactor fixed
/// by a unit vacuum row and `S_00 > 0`.
pub fn s_matrix(rs: &RootSystem, level: u32) -> Result<SMatrix> {
    rs.check_weyl_cap()?;
    let labels = alcove_weights(rs, level);
    let kappa = level as i64 + rs.dual_coxeter() as i64;
    let modulus = rs.form_scale() * kappa;
    let shifted: Vec<Vec<i64>> = labels.iter().map(|l| l.weight.shifted(1).0).collect();
    let n = labels.len();
    let mut entries = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (i, xi) in shifted.iter().enumerate() {
        let orbit = rs.signed_orbit(xi)?;
        for (j, xj) in shifted.iter().enumerate() {
            let mut z = Complex64::new(0.0, 0.0);
            for (wx, sign) in &orbit {
                let t = rs.inner_scaled(wx, xj).rem_euclid(modulus);
                z += Complex64::from_polar(*sign as f64, -2.0 * PI * t as f64 / modulus as f64);
            }
            entries[i][j] = z;
        }
    }
    // K_00 = (−2i)^N Π sin(π(α,ρ)/κ), so i^N makes it positive.
    let npos = rs.positive_roots().len() % 4;
    let phase = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ][npos];
    let norm = entries[0].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for row in entries.iter_mut() {
        for z in row.iter_mut() {
            *z = *z * phase / norm;
        }
    }
    let s = SMatrix { labels, entries, tolerance: S_TOLERANCE };
    let residual = s.unitarity_residual();
    if residual > S_TOLERANCE {
        return Err(Error::Numerical { context: "S-matrix unitarity", residual });
    }
    let (min_re, max_im) = s.vacuum_row_min_real();
    if min_re <= 0.0 || max_im > S_TOLERANCE {
        return Err(Error::Numerical { context: "S-matrix vacuum row", residual: max_im });
    }
    Ok(s)
}

/// An integer combination of level-k alcove labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionElement {
    level: u32,
    terms: BTreeMap<Weight, i64>,
}

impl FusionElement {
    pub fn zero(level: u32) -> Self {
        Self { level, terms: BTreeMap::new() }
    }

    pub fn basis(label: &LevelWeight) -> Self {
        let mut e = Self::zero(label.level);
        e.add(label.weight.clone(), 1);
        e
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Add `c·[w]`. The caller guarantees `w` is in the alcove; see [`Self::validate`].
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

    pub fn add_scaled(&mut self, other: &FusionElement, c: i64) {
        for (w, v) in other.iter() {
            self.add(w.clone(), v * c);
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

    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        self.terms.keys().try_for_each(|w| check_alcove(rs, w, self.level))
    }

    /// Apply charge conjugation to every label.
    pub fn dual(&self, rs: &RootSystem) -> FusionElement {
        let mut out = FusionElement::zero(self.level);
        for (w, c) in self.iter() {
            out.add(rs.dual(w), c);
        }
        out
    }

    pub fn to_terms(&self) -> Vec<FusionTerm> {
        self.iter().map(|(w, c)| FusionTerm { weight: w.clone(), coeff: c }).collect()
    }

    pub fn from_terms(level: u32, terms: impl IntoIterator<Item = FusionTerm>) -> Self {
        let mut e = Self::zero(level);
        for t in terms {
            e.add(t.weight, t.coeff);
        }
        e
    }
}

/// JSON form of one fusion-ring term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionTerm {
    pub weight: Weight,
    pub coeff: i64,
}

impl Serialize for FusionElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_terms().serialize(s)
    }
}

/// Round a floating sum to an integer under [`ROUNDING_GATE`].
pub(crate) fn round_gated(z: Complex64, context: &'static str) -> Result<i64> {
    let n = z.re.round();
    let residual = (z.re - n).abs().max(z.im.abs());
    if !residual.is_finite() || residual >= ROUNDING_GATE {
        return Err(Error::Numerical { context, residual });
    }
    Ok(n as i64)
}

/// Kac–Walton: tensor product, then alcove reduction of every `ν + ρ`.
pub fn fuse_kw(rs: &RootSystem, level: u32, lambda: &Weight, mu: &Weight) -> Result<FusionElement> {
    check_alcove(rs, lambda, level)?;
    check_alcove(rs, mu, level)?;
    kac_walton(rs, level, lambda, mu)
}

/// Kac–Walton without the alcove precondition on the factors.
pub(crate) fn kac_walton(rs: &RootSystem, level: u32, lambda: &Weight, mu: &Weight) -> Result<FusionElement> {
    let ctx = AffineContext::new(rs, level);
    let tensor = tensor_decompose(rs, lambda, mu)?;
    let mut out = FusionElement::zero(level);
    for (nu, m) in tensor.iter() {
        let red = ctx.alcove_reduce(&nu.shifted(1).0)?;
        if red.is_interior() {
            let label = Weight(red.reduced.iter().map(|c| c - 1).collect());
            out.add(label, red.sign as i64 * m);
        }
    }
    if let Some((w, c)) = out.iter().find(|(_, c)| *c < 0) {
        return Err(Error::Internal(format!("negative Kac–Walton coefficient {c} at {w}")));
    }
    Ok(out)
}

/// Verlinde formula `N^ν_{λμ} = Σ_σ S_{λσ} S_{μσ} conj(S_{νσ}) / S_{0σ}`.
pub fn fuse_s(rs: &RootSystem, level: u32, lambda: &Weight, mu: &Weight) -> Result<FusionElement> {
    FusionRing::new(rs, level)?.fuse_s(lambda, mu)
}

/// Alcove, S-matrix and label index for one (algebra, level).
#[derive(Debug, Clone)]
pub struct FusionRing<'a> {
    rs: &'a RootSystem,
    level: u32,
    s: SMatrix,
    index: HashMap<Weight, usize>,
    conjugation: Vec<usize>,
}

impl<'a> FusionRing<'a> {
    pub fn new(rs: &'a RootSystem, level: u32) -> Result<Self> {
        let s = s_matrix(rs, level)?;
        let index = s.labels.iter().enumerate().map(|(i, l)| (l.weight.clone(), i)).collect();
        let conjugation = conjugation_permutation(rs, &s.labels);
        Ok(Self { rs, level, s, index, conjugation })
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn s_matrix(&self) -> &SMatrix {
        &self.s
    }

    pub fn labels(&self) -> &[LevelWeight] {
        &self.s.labels
    }

    pub fn conjugation(&self) -> &[usize] {
        &self.conjugation
    }

    pub fn index(&self, w: &Weight) -> Result<usize> {
        self.rs.check_dominant(w)?;
        self.index
            .get(w)
            .copied()
            .ok_or_else(|| Error::OutsideAlcove { weight: w.0.clone(), level: self.level })
    }

    pub fn fuse_s(&self, lambda: &Weight, mu: &Weight) -> Result<FusionElement> {
        let a = self.index(lambda)?;
        let b = self.index(mu)?;
        let s = &self.s;
        let mut out = FusionElement::zero(self.level);
        for (c, label) in s.labels.iter().enumerate() {
            let mut z = Complex64::new(0.0, 0.0);
            for sigma in 0..s.size() {
                z += s.get(a, sigma) * s.get(b, sigma) * s.get(c, sigma).conj() / s.get(0, sigma);
            }
            let n = round_gated(z, "Verlinde fusion coefficient")?;
            if n < 0 {
                return Err(Error::Numerical { context: "negative fusion coefficient", residual: n as f64 });
            }
            out.add(label.weight.clone(), n);
        }
        Ok(out)
    }

    pub fn fuse_kw(&self, lambda: &Weight, mu: &Weight) -> Result<FusionElement> {
        fuse_kw(self.rs, self.level, lambda, mu)
    }

    /// Bilinear extension of the exact product.
    pub fn multiply(&self, a: &FusionElement, b: &FusionElement) -> Result<FusionElement> {
        multiply(self.rs, self.level, a, b)
    }
}

/// Bilinear Kac–Walton product of two fusion elements at `level`.
pub fn multiply(rs: &RootSystem, level: u32, a: &FusionElement, b: &FusionElement) -> Result<FusionElement> {
    let mut out = FusionElement::zero(level);
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            let p = fuse_kw(rs, level, x, y)?;
            out.add_scaled(&p, cx * cy);
        }
    }
    Ok(out)
}
