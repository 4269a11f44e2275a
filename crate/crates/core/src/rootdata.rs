//! Root systems of the simple Lie algebras.
//!
//! Every weight lives in the fundamental-weight basis with integer
//! coordinates. Roots are integer vectors in the same basis (the rows of the
//! Cartan matrix span them), coroots are stored both as integer coefficient
//! vectors over the simple coroots and as rational vectors in the weight
//! basis under the identification `α^∨ = 2α/(α,α)`. The invariant form is
//! normalized so that long roots have squared length 2.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest Weyl group the enumeration routines accept by default (|W(E6)|).
pub const DEFAULT_WEYL_CAP: u64 = 51_840;

/// Environment variable read by the CLI to raise the Weyl-order cap.
pub const WEYL_CAP_ENV: &str = "LOOPFUSION_WEYL_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// A Cartan type such as `A2` or `G2`. Only valid (series, rank) pairs exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraSpec {
    series: Series,
    rank: usize,
}

impl AlgebraSpec {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(Self { series, rank })
        } else {
            Err(Error::InvalidAlgebra(format!("{}{}", series.letter(), rank)))
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the Lie algebra.
    pub fn dimension(&self) -> usize {
        let r = self.rank;
        match self.series {
            Series::A => r * (r + 2),
            Series::B | Series::C => r * (2 * r + 1),
            Series::D => r * (2 * r - 1),
            Series::E => match r {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            Series::F => 52,
            Series::G => 14,
        }
    }

    /// Order of the Weyl group, from the classification.
    pub fn weyl_order(&self) -> u64 {
        let r = self.rank as u64;
        let fact = |n: u64| (1..=n).product::<u64>();
        match self.series {
            Series::A => fact(r + 1),
            Series::B | Series::C => (1u64 << r) * fact(r),
            Series::D => (1u64 << (r - 1)) * fact(r),
            Series::E => match r {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1_152,
            Series::G => 12,
        }
    }

    /// Gram matrix of the simple roots with long roots of squared length 2
    /// (Bourbaki numbering).
    fn simple_gram(&self) -> Vec<Vec<BigRational>> {
        let r = self.rank;
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let mut gram = vec![vec![BigRational::zero(); r]; r];
        let mut norms = vec![q(2, 1); r];
        let mut edges: Vec<(usize, usize, BigRational)> = Vec::new();
        match self.series {
            Series::A => {
                for i in 0..r - 1 {
                    edges.push((i, i + 1, q(-1, 1)));
                }
            }
            Series::B => {
                norms[r - 1] = q(1, 1);
                for i in 0..r - 1 {
                    edges.push((i, i + 1, q(-1, 1)));
                }
            }
            Series::C => {
                for n in norms.iter_mut().take(r - 1) {
                    *n = q(1, 1);
                }
                for i in 0..r - 2 {
                    edges.push((i, i + 1, q(-1, 2)));
                }
                edges.push((r - 2, r - 1, q(-1, 1)));
            }
            Series::D => {
                for i in 0..r - 2 {
                    edges.push((i, i + 1, q(-1, 1)));
                }
                edges.push((r - 3, r - 1, q(-1, 1)));
            }
            Series::E => {
                edges.push((0, 2, q(-1, 1)));
                edges.push((1, 3, q(-1, 1)));
                for i in 2..r - 1 {
                    edges.push((i, i + 1, q(-1, 1)));
                }
            }
            Series::F => {
                norms[2] = q(1, 1);
                norms[3] = q(1, 1);
                edges.push((0, 1, q(-1, 1)));
                edges.push((1, 2, q(-1, 1)));
                edges.push((2, 3, q(-1, 2)));
            }
            Series::G => {
                norms[0] = q(2, 3);
                edges.push((0, 1, q(-1, 1)));
            }
        }
        for (i, n) in norms.into_iter().enumerate() {
            gram[i][i] = n;
        }
        for (i, j, v) in edges {
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
        gram
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidAlgebra(s.to_string());
        let mut chars = t.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let rank: usize = digits.parse().map_err(|_| bad())?;
        AlgebraSpec::new(series, rank).map_err(|_| bad())
    }
}

impl Serialize for AlgebraSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AlgebraSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer coordinates in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn shifted(&self, by: i64) -> Weight {
        Weight(self.0.iter().map(|c| c + by).collect())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A positive root with its derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coefficients over the simple roots (all nonnegative).
    pub coeffs: Vec<i64>,
    /// Coordinates in the fundamental-weight basis.
    pub omega: Vec<i64>,
    /// Coefficients of `α^∨` over the simple coroots.
    pub coroot_coeffs: Vec<i64>,
    /// `(α, α)` under the normalized form.
    pub norm: BigRational,
    /// `2 / (α, α)`: 1 for long roots, 2 or 3 for short ones.
    pub wall_factor: i64,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// One element of the finite Weyl group as a reduced word.
///
/// The word `[i1, ..., il]` stands for `s_{i1} ... s_{il}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub sign: i8,
}

pub(crate) type DominantMults = Arc<Vec<(Vec<i64>, u64)>>;

/// Immutable root data of a simple Lie algebra.
pub struct RootSystem {
    spec: AlgebraSpec,
    /// `cartan[i][j] = <α_i, α_j^∨>`; row `i` is `α_i` in the weight basis.
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    highest_root: usize,
    dual_coxeter: u32,
    form: Vec<Vec<BigRational>>,
    form_int: Vec<Vec<i64>>,
    form_scale: i64,
    weyl_cap: u64,
    pub(crate) mult_cache: Mutex<HashMap<Vec<i64>, DominantMults>>,
}

impl Clone for RootSystem {
    fn clone(&self) -> Self {
        Self {
            spec: self.spec,
            cartan: self.cartan.clone(),
            positive_roots: self.positive_roots.clone(),
            highest_root: self.highest_root,
            dual_coxeter: self.dual_coxeter,
            form: self.form.clone(),
            form_int: self.form_int.clone(),
            form_scale: self.form_scale,
            weyl_cap: self.weyl_cap,
            mult_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("spec", &self.spec)
            .field("positive_roots", &self.positive_roots.len())
            .field("dual_coxeter", &self.dual_coxeter)
            .finish()
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Gauss–Jordan inverse over the rationals. `None` if singular.
pub(crate) fn invert(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant over the rationals by elimination.
pub(crate) fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &p;
                for c in col..n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    det
}

impl RootSystem {
    pub fn new(spec: AlgebraSpec) -> Self {
        let r = spec.rank();
        let gram = spec.simple_gram();
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let v = rat(2) * &gram[i][j] / &gram[j][j];
                        rat_to_i64(&v).expect("Cartan entries are integers")
                    })
                    .collect()
            })
            .collect();

        let coeff_roots = generate_positive_roots(&cartan);
        let positive_roots: Vec<Root> = coeff_roots
            .into_iter()
            .map(|coeffs| {
                let omega = (0..r).map(|j| (0..r).map(|i| coeffs[i] * cartan[i][j]).sum()).collect();
                let mut norm = BigRational::zero();
                for i in 0..r {
                    for j in 0..r {
                        norm += &gram[i][j] * rat(coeffs[i] * coeffs[j]);
                    }
                }
                let coroot_coeffs = (0..r)
                    .map(|i| {
                        let c = rat(coeffs[i]) * &gram[i][i] / &norm;
                        rat_to_i64(&c).expect("coroot coefficients are integers")
                    })
                    .collect();
                let wall_factor = rat_to_i64(&(rat(2) / &norm)).expect("2/(α,α) is an integer");
                Root { coeffs, omega, coroot_coeffs, norm, wall_factor }
            })
            .collect();

        let highest_root = positive_roots
            .iter()
            .enumerate()
            .max_by_key(|(_, a)| a.height())
            .map(|(i, _)| i)
            .expect("at least one positive root");
        let dual_coxeter = 1 + positive_roots[highest_root].coroot_coeffs.iter().sum::<i64>() as u32;

        // (ω_i, α_j) = δ_ij (α_j, α_j)/2, so F·Cᵀ = D.
        let c_t: Vec<Vec<BigRational>> =
            (0..r).map(|i| (0..r).map(|j| rat(cartan[j][i])).collect()).collect();
        let c_t_inv = invert(&c_t).expect("Cartan matrix is invertible");
        let form: Vec<Vec<BigRational>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| &gram[i][i] / rat(2) * &c_t_inv[i][j])
                    .collect()
            })
            .collect();
        let form_scale = form
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
            .to_i64()
            .expect("form denominators are small");
        let form_int = form
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| rat_to_i64(&(q * rat(form_scale))).expect("scaled form is integral"))
                    .collect()
            })
            .collect();

        Self {
            spec,
            cartan,
            positive_roots,
            highest_root,
            dual_coxeter,
            form,
            form_int,
            form_scale,
            weyl_cap: DEFAULT_WEYL_CAP,
            mult_cache: Mutex::new(HashMap::new()),
        }
    }

    /// Same root data with a different Weyl-order cap.
    pub fn with_weyl_cap(mut self, cap: u64) -> Self {
        self.weyl_cap = cap;
        self
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// The simple roots are the first `rank` positive roots.
    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive_roots[i]
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest_root]
    }

    pub fn dual_coxeter(&self) -> u32 {
        self.dual_coxeter
    }

    pub fn weyl_order(&self) -> u64 {
        self.spec.weyl_order()
    }

    pub fn weyl_cap(&self) -> u64 {
        self.weyl_cap
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    pub fn form_matrix(&self) -> &[Vec<BigRational>] {
        &self.form
    }

    /// Common denominator `L` of the form matrix.
    pub fn form_scale(&self) -> i64 {
        self.form_scale
    }

    /// `L · (x, y)`, an exact integer for integral weights.
    pub fn inner_scaled(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0i64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.form_int[i];
            let s: i64 = row.iter().zip(y).map(|(f, yj)| f * yj).sum();
            acc += xi * s;
        }
        acc
    }

    /// Exact `(x, y)` under the normalized form.
    pub fn inner(&self, x: &[BigRational], y: &[BigRational]) -> Result<BigRational> {
        self.check_rank(x.len())?;
        self.check_rank(y.len())?;
        let mut acc = BigRational::zero();
        for i in 0..x.len() {
            for j in 0..y.len() {
                acc += &x[i] * &self.form[i][j] * &y[j];
            }
        }
        Ok(acc)
    }

    /// The coroot `α^∨ = 2α/(α,α)` as a rational vector in the weight basis.
    pub fn coroot_vector(&self, root: &Root) -> Vec<BigRational> {
        let f = rat(2) / &root.norm;
        root.omega.iter().map(|&c| rat(c) * &f).collect()
    }

    pub fn simple_coroots(&self) -> Vec<Vec<BigRational>> {
        (0..self.rank()).map(|i| self.coroot_vector(self.simple_root(i))).collect()
    }

    /// `(x, γ)` for a rational point and a coroot given as a weight-basis vector.
    pub fn pairing(&self, x: &[BigRational], coroot: &[BigRational]) -> Result<BigRational> {
        self.inner(x, coroot)
    }

    /// `(x, α^∨)` for an integral point: the coroot coefficient dot product.
    pub fn pair_coroot(&self, x: &[i64], root: &Root) -> i64 {
        x.iter().zip(&root.coroot_coeffs).map(|(a, b)| a * b).sum()
    }

    /// `(x, θ^∨)`.
    pub fn theta_level(&self, x: &[i64]) -> i64 {
        self.pair_coroot(x, self.highest_root())
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        if n == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch { expected: self.rank(), got: n })
        }
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        self.check_rank(w.rank())
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)?;
        if w.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(w.0.clone()))
        }
    }

    pub fn check_weyl_cap(&self) -> Result<()> {
        let order = self.weyl_order();
        if order > self.weyl_cap {
            Err(Error::WeylCapExceeded { order, cap: self.weyl_cap })
        } else {
            Ok(())
        }
    }

    /// `s_i(x) = x − (x, α_i^∨) α_i`, in place.
    pub fn reflect_simple(&self, x: &mut [i64], i: usize) {
        let p = x[i];
        if p != 0 {
            for (xj, cj) in x.iter_mut().zip(&self.cartan[i]) {
                *xj -= p * cj;
            }
        }
    }

    /// Apply `s_{i1} ... s_{il}` to `x` (rightmost letter first).
    pub fn apply_word(&self, word: &[usize], x: &[i64]) -> Vec<i64> {
        let mut y = x.to_vec();
        for &i in word.iter().rev() {
            self.reflect_simple(&mut y, i);
        }
        y
    }

    /// Dominant representative of the Weyl orbit of `x`, with the number of
    /// simple reflections used.
    pub fn to_dominant(&self, x: &[i64]) -> (Vec<i64>, usize) {
        let mut y = x.to_vec();
        let mut steps = 0;
        while let Some(i) = y.iter().position(|&c| c < 0) {
            self.reflect_simple(&mut y, i);
            steps += 1;
        }
        (y, steps)
    }

    /// Full Weyl orbit of `x`, sorted.
    pub fn weyl_orbit(&self, x: &Weight) -> Result<Vec<Weight>> {
        self.check_weight(x)?;
        self.check_weyl_cap()?;
        Ok(self.orbit_unchecked(&x.0).into_iter().map(Weight).collect())
    }

    pub(crate) fn orbit_unchecked(&self, x: &[i64]) -> BTreeSet<Vec<i64>> {
        let (start, _) = self.to_dominant(x);
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank() {
                // From the dominant point, moving down only along positive
                // pairings reaches every orbit element.
                if v[i] > 0 {
                    let mut w = v.clone();
                    self.reflect_simple(&mut w, i);
                    if seen.insert(w.clone()) {
                        queue.push_back(w);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// `{(w·x, ε(w))}` over the whole Weyl group for a strictly dominant `x`.
    pub fn signed_orbit(&self, x: &[i64]) -> Result<Vec<(Vec<i64>, i8)>> {
        self.check_rank(x.len())?;
        self.check_weyl_cap()?;
        if x.iter().any(|&c| c <= 0) {
            return Err(Error::Invalid(format!("{x:?} is not strictly dominant")));
        }
        let mut seen: HashMap<Vec<i64>, i8> = HashMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(x.to_vec(), 1);
        queue.push_back(x.to_vec());
        while let Some(v) = queue.pop_front() {
            let s = seen[&v];
            order.push((v.clone(), s));
            for i in 0..self.rank() {
                if v[i] > 0 {
                    let mut w = v.clone();
                    self.reflect_simple(&mut w, i);
                    if !seen.contains_key(&w) {
                        seen.insert(w.clone(), -s);
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok(order)
    }

    /// Every Weyl group element once, as a reduced word with its sign.
    pub fn enumerate_weyl(&self) -> Result<std::vec::IntoIter<WeylElement>> {
        self.check_weyl_cap()?;
        let rho = vec![1i64; self.rank()];
        let mut words: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        words.insert(rho.clone(), Vec::new());
        queue.push_back(rho);
        while let Some(v) = queue.pop_front() {
            let word = words[&v].clone();
            for i in 0..self.rank() {
                // (v, α_i^∨) > 0 means s_i w is longer than w.
                if v[i] > 0 {
                    let mut u = v.clone();
                    self.reflect_simple(&mut u, i);
                    if !words.contains_key(&u) {
                        let mut next = Vec::with_capacity(word.len() + 1);
                        next.push(i);
                        next.extend_from_slice(&word);
                        words.insert(u.clone(), next);
                        queue.push_back(u);
                    }
                }
            }
            let sign = if word.len() % 2 == 0 { 1 } else { -1 };
            out.push(WeylElement { word, sign });
        }
        Ok(out.into_iter())
    }

    /// Charge conjugate `λ* = −w₀(λ)`.
    pub fn dual(&self, w: &Weight) -> Weight {
        let neg: Vec<i64> = w.0.iter().map(|c| -c).collect();
        Weight(self.to_dominant(&neg).0)
    }

    /// Reflect `x` in an arbitrary positive root.
    pub fn reflect_root(&self, x: &[i64], root: &Root) -> Vec<i64> {
        let p = self.pair_coroot(x, root);
        x.iter().zip(&root.omega).map(|(a, b)| a - p * b).collect()
    }

    pub fn to_json(&self) -> RootSystemJson {
        let q = |v: &BigRational| {
            if v.is_integer() {
                v.to_integer().to_string()
            } else {
                format!("{}/{}", v.numer(), v.denom())
            }
        };
        let qv = |v: &[BigRational]| v.iter().map(q).collect::<Vec<_>>();
        let r = self.rank();
        RootSystemJson {
            spec: self.spec,
            cartan: self.cartan.clone(),
            simple_roots: (0..r).map(|i| self.simple_root(i).omega.clone()).collect(),
            positive_roots: self.positive_roots.iter().map(|a| a.omega.clone()).collect(),
            simple_coroots: self.simple_coroots().iter().map(|v| qv(v)).collect(),
            coroots: self.positive_roots.iter().map(|a| qv(&self.coroot_vector(a))).collect(),
            fundamental_weights: (0..r)
                .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
                .collect(),
            rho: self.rho().0,
            highest_root: self.highest_root().omega.clone(),
            dual_coxeter: self.dual_coxeter,
            form_matrix: self.form.iter().map(|row| qv(row)).collect(),
            weyl_order: self.weyl_order(),
        }
    }
}

/// JSON view of a [`RootSystem`]; rationals are rendered as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RootSystemJson {
    pub spec: AlgebraSpec,
    pub cartan: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<String>>,
    pub coroots: Vec<Vec<String>>,
    pub fundamental_weights: Vec<Vec<i64>>,
    pub rho: Vec<i64>,
    pub highest_root: Vec<i64>,
    pub dual_coxeter: u32,
    pub form_matrix: Vec<Vec<String>>,
    pub weyl_order: u64,
}

/// Positive roots as simple-root coefficient vectors, by root strings.
///
/// The simple roots come first, then increasing height.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                // p: how far the α_i-string extends below β.
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}

/// `true` iff the rational symmetric matrix has all leading principal minors positive.
pub fn is_positive_definite(m: &[Vec<BigRational>]) -> bool {
    (1..=m.len()).all(|k| {
        let minor: Vec<Vec<BigRational>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}
