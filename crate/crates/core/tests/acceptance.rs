//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test --test acceptance`.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use loopfusion::affine_weyl::{AffineContext, ReductionOrder, ReductionStatus};
use loopfusion::finite_reps::{tensor_decompose, weight_multiplicities, weyl_dimension};
use loopfusion::fusion::{alcove_weights, FusionRing, ROUNDING_GATE};
use loopfusion::induction::{homomorphism_check, induce};
use loopfusion::rootdata::{RootSystem, Weight};
use loopfusion::verlinde::{factorization_check, verlinde_dimension, Surface};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const S_STRUCTURE_TOL: f64 = 1e-9;
const FUSION_BUDGET: Duration = Duration::from_secs(60);
const HOMOMORPHISM_BUDGET: Duration = Duration::from_secs(120);
const RANDOM_WEIGHTS: usize = 1000;
const RANDOM_PAIRS_HOM: usize = 500;
const RANDOM_PAIRS_KLIMYK: usize = 200;

/// (algebra, max level) pairs shared by criteria 1, 7 and 8.
const FUSION_MATRIX: [(&str, u32); 4] = [("A1", 6), ("A2", 4), ("B2", 3), ("G2", 3)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rs(name: &str) -> RootSystem {
    RootSystem::new(name.parse().expect("known algebra"))
}

fn random_dominant(rng: &mut ChaCha8Rng, rank: usize, max: i64) -> Weight {
    Weight((0..rank).map(|_| rng.gen_range(0..=max)).collect())
}

fn random_alcove(rng: &mut ChaCha8Rng, ring: &FusionRing<'_>) -> Weight {
    let labels = ring.labels();
    labels[rng.gen_range(0..labels.len())].weight.clone()
}

fn shifted_back(x: &[i64]) -> Weight {
    Weight(x.iter().map(|c| c - 1).collect())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Display>(ctx: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn fusion_paths() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0usize;
    let mut worst = 0f64;
    for (name, max_k) in FUSION_MATRIX {
        let r = rs(name);
        for k in 0..=max_k {
            let ring = FusionRing::new(&r, k).map_err(fail(name))?;
            let s = ring.s_matrix();
            let n = s.size();
            for a in 0..n {
                for b in 0..n {
                    let la = &ring.labels()[a].weight;
                    let lb = &ring.labels()[b].weight;
                    let kw = ring.fuse_kw(la, lb).map_err(fail("kw"))?;
                    let via_s = ring.fuse_s(la, lb).map_err(fail("s"))?;
                    ensure(kw == via_s, || format!("{name} k={k} {la}x{lb}: kw {kw:?} vs s {via_s:?}"))?;
                    for c in 0..n {
                        let mut z = Complex64::new(0.0, 0.0);
                        for sg in 0..n {
                            z += s.get(a, sg) * s.get(b, sg) * s.get(c, sg).conj() / s.get(0, sg);
                        }
                        worst = worst.max((z.re - z.re.round()).abs().max(z.im.abs()));
                    }
                    pairs += 1;
                }
            }
        }
    }
    let t = start.elapsed();
    ensure(worst < ROUNDING_GATE, || format!("rounding residual {worst:e} >= {ROUNDING_GATE:e}"))?;
    ensure(t < FUSION_BUDGET, || format!("took {t:?}, budget {FUSION_BUDGET:?}"))?;
    Ok(format!("{pairs} pairs, max residual {worst:.1e}, {:.2}s", t.as_secs_f64()))
}

fn su2_closed_form() -> Outcome {
    let r = rs("A1");
    let mut checked = 0;
    for k in 0..=6i64 {
        let ring = FusionRing::new(&r, k as u32).map_err(fail("A1"))?;
        for a in 0..=k {
            for b in 0..=k {
                let kw = ring.fuse_kw(&Weight(vec![a]), &Weight(vec![b])).map_err(fail("kw"))?;
                let via_s = ring.fuse_s(&Weight(vec![a]), &Weight(vec![b])).map_err(fail("s"))?;
                for c in 0..=k {
                    let expect = ((a - b).abs() <= c && c <= (a + b).min(2 * k - a - b) && (a + b + c) % 2 == 0) as i64;
                    let w = Weight(vec![c]);
                    ensure(kw.coefficient(&w) == expect && via_s.coefficient(&w) == expect, || {
                        format!("k={k} N^{c}_{{{a},{b}}}: expected {expect}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} coefficients"))
}

fn homomorphism() -> Outcome {
    let start = Instant::now();
    let mut checks = 0usize;
    let mut run = |r: &RootSystem, h: u32, l: &Weight, m: &Weight| -> Result<(), String> {
        let c = homomorphism_check(r, h, l, m).map_err(fail("check"))?;
        checks += 1;
        ensure(c.equal, || format!("{} h={h} {l}x{m}: {:?} vs {:?}", r.spec(), c.lhs, c.rhs))
    };
    let a1 = rs("A1");
    for h in 0..=3u32 {
        let bound = 2 * (h as i64 + 2);
        for a in 0..=bound {
            for b in 0..=bound {
                run(&a1, h, &Weight(vec![a]), &Weight(vec![b]))?;
            }
        }
    }
    let a2 = rs("A2");
    for h in 0..=2u32 {
        let bound = h as i64 + 3;
        let ws: Vec<Weight> = (0..=bound).flat_map(|x| (0..=bound).map(move |y| Weight(vec![x, y]))).collect();
        for l in &ws {
            for m in &ws {
                run(&a2, h, l, m)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["B2", "G2"] {
        let r = rs(name);
        for _ in 0..RANDOM_PAIRS_HOM {
            let h = rng.gen_range(0..=2u32);
            let kappa = h as i64 + r.dual_coxeter() as i64;
            let l = random_dominant(&mut rng, 2, kappa);
            let m = random_dominant(&mut rng, 2, kappa);
            run(&r, h, &l, &m)?;
        }
    }
    let t = start.elapsed();
    ensure(t < HOMOMORPHISM_BUDGET, || format!("took {t:?}, budget {HOMOMORPHISM_BUDGET:?}"))?;
    Ok(format!("{checks} checks, {:.2}s", t.as_secs_f64()))
}

fn vanishing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut walls = 0;
    for name in ["A1", "A2", "B2"] {
        let r = rs(name);
        for _ in 0..RANDOM_WEIGHTS {
            let h = rng.gen_range(0..=5u32);
            let ctx = AffineContext::new(&r, h);
            let lambda = random_dominant(&mut rng, r.rank(), 3 * ctx.kappa());
            let x = lambda.shifted(1).0;
            let wall = ctx.on_wall(&x);
            let red = ctx.alcove_reduce(&x).map_err(fail("reduce"))?;
            let empty = induce(&r, h, &lambda).map_err(fail("induce"))?.value.is_empty();
            ensure(wall == (red.status == ReductionStatus::Wall) && wall == empty, || {
                format!("{name} h={h} {lambda}: wall {wall}, status {:?}, induce empty {empty}", red.status)
            })?;
            walls += wall as usize;
        }
    }
    Ok(format!("{} weights, {walls} on walls", 3 * RANDOM_WEIGHTS))
}

fn degree_path_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let names = ["A1", "A2", "B2", "G2", "C3"];
    let systems: Vec<RootSystem> = names.iter().map(|n| rs(n)).collect();
    for _ in 0..RANDOM_WEIGHTS {
        let r = &systems[rng.gen_range(0..systems.len())];
        let h = rng.gen_range(0..=4u32);
        let ctx = AffineContext::new(r, h);
        let count = rng.gen_range(1..=3);
        let lambdas: Vec<Weight> = (0..count).map(|_| random_dominant(&mut rng, r.rank(), 3 * ctx.kappa())).collect();
        let lo = ctx.total_degree_with(&lambdas, ReductionOrder::LowestIndex).map_err(fail("lo"))?;
        let hi = ctx.total_degree_with(&lambdas, ReductionOrder::HighestIndex).map_err(fail("hi"))?;
        ensure(lo == hi, || format!("{} h={h} {lambdas:?}: {lo:?} vs {hi:?}", r.spec()))?;
        for l in &lambdas {
            let x = l.shifted(1).0;
            let a = ctx.alcove_reduce_with(&x, ReductionOrder::LowestIndex).map_err(fail("lo"))?;
            let b = ctx.alcove_reduce_with(&x, ReductionOrder::HighestIndex).map_err(fail("hi"))?;
            ensure(a.status == b.status && (a.status == ReductionStatus::Wall || a.reduced == b.reduced), || {
                format!("{} h={h} {l}: endpoints differ", r.spec())
            })?;
        }
    }
    let mut alcove = 0;
    for (name, max_k) in FUSION_MATRIX {
        let r = rs(name);
        for k in 0..=max_k {
            let ctx = AffineContext::new(&r, k);
            for lw in alcove_weights(&r, k) {
                let red = ctx.alcove_reduce(&lw.weight.shifted(1).0).map_err(fail("reduce"))?;
                ensure(red.is_interior() && red.length == 0 && shifted_back(&red.reduced) == lw.weight, || {
                    format!("{name} k={k} {}: length {}", lw.weight, red.length)
                })?;
                alcove += 1;
            }
        }
    }
    Ok(format!("{RANDOM_WEIGHTS} inputs, {alcove} alcove weights at length 0"))
}

fn factorization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checks = 0;
    for (name, max_k) in [("A1", 4u32), ("A2", 3), ("B2", 2)] {
        let r = rs(name);
        for k in 0..=max_k {
            let ring = FusionRing::new(&r, k).map_err(fail(name))?;
            for g in 1..=3u32 {
                for m in 0..=2usize {
                    for _ in 0..3 {
                        let ins: Vec<Weight> = (0..m).map(|_| random_alcove(&mut rng, &ring)).collect();
                        let surface = Surface::new(g, ins);
                        let c = factorization_check(&ring, &surface).map_err(fail("factorization"))?;
                        ensure(c.equal, || format!("{name} k={k} {surface:?}: {} vs {}", c.lhs, c.rhs))?;
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} surfaces"))
}

fn s_structure() -> Outcome {
    let mut worst = 0f64;
    let mut count = 0;
    for (name, max_k) in FUSION_MATRIX {
        let r = rs(name);
        for k in 0..=max_k {
            let ring = FusionRing::new(&r, k).map_err(fail(name))?;
            let s = ring.s_matrix();
            let res = [s.symmetry_residual(), s.unitarity_residual(), s.square_residual(ring.conjugation())];
            for (what, v) in ["symmetry", "unitarity", "S^2 = C"].iter().zip(res) {
                ensure(v < S_STRUCTURE_TOL, || format!("{name} k={k} {what} residual {v:e}"))?;
                worst = worst.max(v);
            }
            count += 1;
        }
    }
    Ok(format!("{count} matrices, max residual {worst:.1e}"))
}

fn known_values() -> Outcome {
    let a1 = rs("A1");
    for (k, g, expect) in [(1u32, 1u32, 2u64), (1, 2, 4)] {
        let d = verlinde_dimension(&a1, k, &Surface::new(g, vec![])).map_err(fail("A1"))?;
        ensure(d == expect, || format!("A1 k={k} g={g}: {d}, expected {expect}"))?;
    }
    let mut two_point = 0;
    for (name, max_k) in FUSION_MATRIX {
        let r = rs(name);
        for k in 0..=max_k {
            for lw in alcove_weights(&r, k) {
                let s = Surface::new(0, vec![lw.weight.clone(), r.dual(&lw.weight)]);
                let d = verlinde_dimension(&r, k, &s).map_err(fail(name))?;
                ensure(d == 1, || format!("{name} k={k} two-point {}: {d}", lw.weight))?;
                two_point += 1;
            }
        }
    }
    Ok(format!("genus 1/2 values, {two_point} two-point dimensions"))
}

fn base_layer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pairs = 0;
    let mut totals = 0;
    for (name, max) in [("A1", 8i64), ("A2", 4), ("A3", 2), ("B2", 4), ("C3", 2), ("G2", 3)] {
        let r = rs(name);
        for _ in 0..RANDOM_PAIRS_KLIMYK {
            let l = random_dominant(&mut rng, r.rank(), max);
            let m = random_dominant(&mut rng, r.rank(), max);
            let t = tensor_decompose(&r, &l, &m).map_err(fail("tensor"))?;
            ensure(t.iter().all(|(_, c)| c > 0), || format!("{name} {l}x{m}: nonpositive coefficient"))?;
            let lhs = t.dimension(&r).map_err(fail("dim"))?;
            let dl = weyl_dimension(&r, &l).map_err(fail("dim"))?;
            let dm = weyl_dimension(&r, &m).map_err(fail("dim"))?;
            ensure(lhs as u128 == dl * dm, || format!("{name} {l}x{m}: {lhs} vs {dl}*{dm}"))?;
            for w in [&l, &m] {
                let total = weight_multiplicities(&r, w).map_err(fail("freudenthal"))?.total();
                let d = weyl_dimension(&r, w).map_err(fail("dim"))?;
                ensure(total == d, || format!("{name} {w}: Freudenthal {total} vs Weyl {d}"))?;
                totals += 1;
            }
            pairs += 1;
        }
    }
    for (name, w, expect) in [
        ("F4", vec![0, 0, 0, 1], 26u128),
        ("E6", vec![1, 0, 0, 0, 0, 0], 27),
        ("E7", vec![0, 0, 0, 0, 0, 0, 1], 56),
    ] {
        let r = rs(name);
        let w = Weight(w);
        let total = weight_multiplicities(&r, &w).map_err(fail("freudenthal"))?.total();
        let d = weyl_dimension(&r, &w).map_err(fail("dim"))?;
        ensure(total == d && d == expect, || format!("{name} {w}: {total}, {d}, expected {expect}"))?;
        totals += 1;
    }
    Ok(format!("{pairs} tensor pairs, {totals} Freudenthal totals"))
}

fn cli() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_loopfusion");
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let invoke = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env_remove("LOOPFUSION_WEYL_CAP")
            .output()
            .map_err(|e| format!("spawn: {e}"))
    };
    let cases: [(&str, &[&str]); 3] = [
        ("fusion_a1_k2.json", &["fusion", "--algebra", "A1", "--level", "2", "--weights", "1;1", "--format", "json"]),
        (
            "report_a1_h1_g0.json",
            &["report", "--algebra", "A1", "--level", "1", "--genus", "0", "--weights", "2", "--format", "json"],
        ),
        ("induce_a1_h1.json", &["induce", "--algebra", "A1", "--level", "1", "--weights", "3", "--format", "json"]),
    ];
    for (file, args) in cases {
        let expected = std::fs::read(golden.join(file)).map_err(|e| format!("{file}: {e}"))?;
        let out = invoke(args)?;
        ensure(out.status.code() == Some(0), || format!("{file}: exit {:?}", out.status.code()))?;
        ensure(out.stdout == expected, || {
            format!("{file}: output differs:\n{}", String::from_utf8_lossy(&out.stdout))
        })?;
    }
    let exits: [(i32, &[&str]); 9] = [
        (2, &["frobnicate"]),
        (2, &["fusion", "--algebra", "A1", "--level", "2", "--weights", "1;x"]),
        (2, &["fusion", "--algebra", "A1", "--level", "two", "--weights", "1;1"]),
        (2, &["fusion", "--algebra", "A1", "--weights", "1;1", "--format", "yaml"]),
        (3, &["fusion", "--algebra", "A1", "--level", "2", "--weights", "1,2;1"]),
        (3, &["dim", "--algebra", "Z9", "--weights", "1"]),
        (3, &["fusion", "--algebra", "A1", "--level", "1", "--weights", "2;1"]),
        (3, &["dim", "--algebra", "A1", "--weights", "-1"]),
        (5, &["fusion", "--algebra", "E7", "--level", "1", "--weights", "0,0,0,0,0,0,0;0,0,0,0,0,0,0"]),
    ];
    for (code, args) in exits {
        let out = invoke(args)?;
        ensure(out.status.code() == Some(code), || {
            format!("{args:?}: exit {:?}, expected {code}", out.status.code())
        })?;
        ensure(out.stdout.is_empty() && !out.stderr.is_empty(), || format!("{args:?}: output streams"))?;
    }
    Ok("3 golden files, 9 exit-code cases".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("fusion paths agree (Kac-Walton = Verlinde)", fusion_paths),
        ("su(2) closed-form fusion rule", su2_closed_form),
        ("induction takes tensor product to fusion", homomorphism),
        ("vanishing criterion agreement", vanishing),
        ("degree path independence", degree_path_independence),
        ("genus factorization", factorization),
        ("S-matrix structure", s_structure),
        ("known small values", known_values),
        ("Klimyk and Freudenthal base layer", base_layer),
        ("CLI golden files and exit codes", cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
