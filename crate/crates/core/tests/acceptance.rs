//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output; exits nonzero if any fails.

use std::cmp::Ordering;
use std::time::Instant;

use bts_core::betanum::{cert_cmp, eval_pi, BetaSpec, CertValue, FloatBounds};
use bts_core::expansion::{alpha_of, expand, is_admissible, AlphaSeq, ExpansionKind};
use bts_core::holder::{common_prefix_len, default_offsets, holder_estimate, HolderValue};
use bts_core::seqcore::is_lyndon;
use bts_core::subshift::{
    entropy, enumerate_if_finite, membership, normalize, normalize_with, sft_entropy_oracle, LexPair,
    NormalizeOptions, PairStatus, StepOrder,
};
use bts_core::survivor::{hausdorff_dim, is_bifurcation, is_bifurcation_seq, r_star_chain};
use bts_core::{EPSeq, Word};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_0001;

// Independent oracles, frozen: bisection in f64 on the defining polynomials.
// λ: x² + x³ = 1. β: x⁵ = x⁴ + x³ + x² + 1.
const LAMBDA_01: f64 = 0.754877666246693;
const BETA_11101: f64 = 1.888518845484415;

type Check = Result<String, String>;
type Suite<'a> = (&'a str, &'a mut dyn FnMut(&mut ChaCha8Rng) -> Result<usize, String>);
type Criterion = (&'static str, fn() -> Check);

fn s(text: &str) -> EPSeq {
    text.parse().unwrap()
}

fn q(n: i64, d: i64) -> CertValue {
    CertValue::point(BigRational::new(n.into(), d.into()))
}

fn b11101() -> BetaSpec {
    BetaSpec::parse("one-exp:11101").unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if (f(m) > 0.0) == (f(hi) > 0.0) {
            hi = m;
        } else {
            lo = m;
        }
    }
    0.5 * (lo + hi)
}

fn c1_worked_example() -> Check {
    let p = LexPair::parse("0101101110", "11101001000(1)").map_err(|e| e.to_string())?;
    let r = entropy(&p).map_err(|e| e.to_string())?;
    let n = &r.normalized;
    ensure(n.a == s("(011)") && n.b == s("(110)"), format!("got a={} b={}", n.a, n.b))?;
    ensure(r.entropy == FloatBounds::zero(), format!("entropy {:?}", r.entropy))?;
    let m = enumerate_if_finite(n, 6).map_err(|e| e.to_string())?.ok_or("not finite")?;
    ensure(m == vec![s("(011)"), s("(101)"), s("(110)")], format!("members {m:?}"))?;
    Ok("a=(011) b=(110), entropy 0, members {(011),(101),(110)}".into())
}

fn c2_dimension_at_01() -> Check {
    let lam = bisect(|x| x * x + x * x * x - 1.0, 0.0, 1.0);
    ensure((lam - LAMBDA_01).abs() < 1e-14, "oracle drift")?;
    let b = b11101();
    let r = hausdorff_dim(&b, s("01")).map_err(|e| e.to_string())?;
    let (lo, hi) = r.lambda.as_ref().ok_or("no λ")?.f64_bounds();
    ensure((lo - lam).abs() < 1e-12 && (hi - lam).abs() < 1e-12, format!("λ in [{lo}, {hi}] vs {lam}"))?;
    let eta = -lam.ln() / BETA_11101.ln();
    ensure((r.dim.mid() - eta).abs() < 1e-12, format!("η(.01) = {:?} vs {eta}", r.dim))?;
    let r2 = hausdorff_dim(&b, s("00111")).map_err(|e| e.to_string())?;
    let d = (r2.dim.mid() - r.dim.mid()).abs();
    ensure(d < 1e-12, format!("η(.00111) differs by {d}"))?;
    let words = [Word::parse("00").unwrap(), Word::parse("111").unwrap()];
    let h = sft_entropy_oracle(&words, 40);
    ensure((h + lam.ln()).abs() < 1e-2, format!("oracle {h} vs {}", -lam.ln()))?;
    Ok(format!("λ={:.15}, η(.01)={:.12}, |η(.00111)-η(.01)|={d:.1e}, sft={h:.6}", 0.5 * (lo + hi), r.dim.mid()))
}

fn c3_admissibility() -> Check {
    let b = BetaSpec::parse("one-exp:31").map_err(|e| e.to_string())?;
    let a = alpha_of(&b).map_err(|e| e.to_string())?;
    ensure(a.as_seq() == Some(&s("(30)")), format!("α = {}", a.render(20)))?;
    ensure(!is_admissible(&s("(23)"), &b).unwrap(), "(23) admissible")?;
    ensure(is_admissible(&s("23"), &b).unwrap(), "23 inadmissible")?;
    Ok("α=(30), (23) inadmissible, 23·0^∞ admissible".into())
}

fn c4_rewriting() -> Check {
    let alpha = AlphaSeq::Exact(s("(1101)"));
    let c = r_star_chain(&Word::parse("0110011").unwrap(), &alpha, 1, 64).map_err(|e| e.to_string())?;
    let chain: Vec<String> = c.steps.iter().map(EPSeq::render).collect();
    ensure(
        c.len() == 2 && c.result == s("1"),
        format!(
            "with α=(1101)^∞ the chain is [{}] ({} steps): (0110011)^∞ is already admissible; \
             the two-step chain to 10^∞ needs α read as 1101·0^∞",
            chain.join(" → "),
            c.len()
        ),
    )?;
    Ok(chain.join(" → "))
}

fn c5_boundary() -> Check {
    let b = b11101();
    let r = hausdorff_dim(&b, CertValue::from_int(0)).map_err(|e| e.to_string())?;
    ensure(r.dim == FloatBounds::exact(1.0), format!("η(0) = {:?}", r.dim))?;
    let l = r.lambda_bounds.ok_or("no λ")?;
    ensure(l.contains(1.0 / BETA_11101) && l.width() <= 1e-10, format!("λ {l:?}"))?;
    let mut ts = Vec::new();
    for t in [q(6, 10), q(3, 4), q(9, 10)] {
        ensure(cert_cmp(&t, &CertValue::from_int(1).div(&b.value()).unwrap()).unwrap() == Ordering::Greater, "t ≤ 1/β")?;
        let r = hausdorff_dim(&b, t.clone()).map_err(|e| e.to_string())?;
        ensure(r.dim == FloatBounds::zero(), format!("η({}) = {:?}", t.to_f64(), r.dim))?;
        ts.push(format!("{}", t.to_f64()));
    }
    Ok(format!("η(0)=1, λ width {:.1e} ∋ 1/β; η=0 at t={}", l.width(), ts.join(",")))
}

fn random_seq(rng: &mut ChaCha8Rng, max_digit: u8, pre: usize, per: usize) -> EPSeq {
    let (np, nc) = (rng.gen_range(0..=pre), rng.gen_range(1..=per));
    let mut word = |n: usize| Word::new((0..n).map(|_| rng.gen_range(0..=max_digit)).collect()).unwrap();
    let p = word(np);
    let c = word(nc);
    EPSeq::new(p, c).unwrap()
}

fn binary_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        for bits in 0u32..(1 << n) {
            out.push(Word::new((0..n).rev().map(|i| ((bits >> i) & 1) as u8).collect()).unwrap());
        }
    }
    out
}

fn prop_order(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let n = 200;
    for _ in 0..n {
        let (a, b, c) = (random_seq(rng, 2, 4, 4), random_seq(rng, 2, 4, 4), random_seq(rng, 2, 4, 4));
        let len = 4 + 4 * 4 * 4 + 8;
        let digits = |x: &EPSeq| x.prefix(len);
        ensure(a.cmp(&b) == digits(&a).digits().cmp(digits(&b).digits()), format!("{a} vs {b}"))?;
        ensure(a.cmp(&b) == b.cmp(&a).reverse(), "antisymmetry")?;
        if a <= b && b <= c {
            ensure(a <= c, "transitivity")?;
        }
    }
    Ok(n)
}

fn prop_canonical(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let n = 200;
    for _ in 0..n {
        let x = random_seq(rng, 3, 5, 4);
        let again = EPSeq::new(x.pre().clone(), x.per().clone()).unwrap();
        ensure(again == x && again.render() == x.render(), format!("{x}"))?;
        ensure(x.render().parse::<EPSeq>().unwrap() == x, format!("reparse {x}"))?;
        // Unrolling the cycle once more denotes the same sequence.
        let unrolled = EPSeq::new(x.pre().concat(x.per()), x.per().concat(x.per())).unwrap();
        ensure(unrolled == x, format!("unrolled {x}"))?;
    }
    Ok(n)
}

fn prop_greedy_round_trip(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let bases: Vec<BetaSpec> = ["2", "3", "5/2", "3/2", "7/4"].iter().map(|b| BetaSpec::parse(b).unwrap()).collect();
    let mut done = 0;
    while done < 120 {
        let b = &bases[rng.gen_range(0..bases.len())];
        let len = rng.gen_range(1..=8);
        let mut w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..=b.gamma())).collect();
        *w.last_mut().unwrap() = rng.gen_range(1..=b.gamma());
        let x = EPSeq::finite(Word::new(w).unwrap());
        match is_admissible(&x, b) {
            Ok(true) => {}
            Ok(false) => continue,
            Err(e) => return Err(format!("{x} at {b}: {e}")),
        }
        let v = eval_pi(&x, b).map_err(|e| e.to_string())?;
        ensure(v.as_rational().is_some(), "value over a rational base is rational")?;
        let back = expand(&v, b, ExpansionKind::Greedy, 64).map_err(|e| e.to_string())?;
        ensure(back.as_seq() == Some(&x), format!("{x} at {b} came back as {back:?}"))?;
        done += 1;
    }
    Ok(done)
}

fn prop_lyndon(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let b = b11101();
    let mut words: Vec<Word> = binary_words(10).into_iter().filter(|w| w.last() == Some(1)).collect();
    words.retain(|w| is_admissible(&EPSeq::finite(w.clone()), &b).unwrap());
    let mut n = 0;
    for w in &words {
        let seq = EPSeq::finite(w.clone());
        let lyn = is_lyndon(w).unwrap();
        ensure(is_bifurcation_seq(&seq) == lyn, format!("{w}: symbolic test disagrees with Lyndon"))?;
        n += 1;
    }
    // Through values: Parry's criterion makes w·0^∞ the greedy expansion.
    for _ in 0..100 {
        let w = &words[rng.gen_range(0..words.len())];
        let v = eval_pi(&EPSeq::finite(w.clone()), &b).unwrap();
        ensure(is_bifurcation(&b, &v).unwrap() == is_lyndon(w).unwrap(), format!("{w}: value test disagrees"))?;
        n += 1;
    }
    Ok(n)
}

fn random_pair(rng: &mut ChaCha8Rng) -> LexPair {
    loop {
        let a = random_seq(rng, 1, 8, 6);
        let b = random_seq(rng, 1, 8, 6);
        let (t, u) = if a <= b { (a, b) } else { (b, a) };
        if let Ok(p) = LexPair::new(t, u) {
            return p;
        }
    }
}

fn prop_normalization(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let probes: Vec<EPSeq> = binary_words(7).into_iter().map(|w| EPSeq::periodic(w).unwrap()).collect();
    let n = 120;
    for _ in 0..n {
        let p = random_pair(rng);
        let np = normalize(&p).map_err(|e| format!("{p:?}: {e}"))?;
        match np.status {
            PairStatus::Nonempty => {
                ensure(np.is_fixed_point(), format!("{p:?} not fixed"))?;
                let again = normalize(&np.as_pair().unwrap()).unwrap();
                ensure(again.a == np.a && again.b == np.b, format!("{p:?} renormalizes"))?;
                let q = np.as_pair().unwrap();
                for x in &probes {
                    ensure(membership(x, &p) == membership(x, &q), format!("{x} in {p:?}"))?;
                }
            }
            PairStatus::Empty => {
                ensure(probes.iter().all(|x| !membership(x, &p)), format!("{p:?} empty but has members"))?;
            }
            PairStatus::DegenerateBoundary => {
                let ok = probes.iter().filter(|x| membership(x, &p)).all(|x| *x == s("(1)") || x.is_zero());
                ensure(ok, format!("{p:?} degenerate but has other members"))?;
            }
        }
    }
    Ok(n)
}

fn prop_prefix_bounds(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let b = b11101();
    let t0 = 0.1;
    let mut pts: Vec<CertValue> = Vec::new();
    for w in binary_words(9).into_iter().filter(|w| w.last() == Some(1)) {
        let seq = EPSeq::finite(w.clone());
        if !is_lyndon(&w).unwrap() || !is_admissible(&seq, &b).unwrap() {
            continue;
        }
        let v = eval_pi(&seq, &b).unwrap();
        if v.to_f64() >= t0 {
            pts.push(v);
        }
    }
    pts.push(CertValue::from_int(1));
    let bf = BETA_11101;
    let n = 100;
    for _ in 0..n {
        let i = rng.gen_range(0..pts.len());
        let mut j = rng.gen_range(0..pts.len());
        while j == i {
            j = rng.gen_range(0..pts.len());
        }
        let (t, u) = (&pts[i], &pts[j]);
        let m = common_prefix_len(t, u, &b).map_err(|e| e.to_string())?;
        let d = (t.to_f64() - u.to_f64()).abs();
        let upper = bf.powi(-(m as i32));
        let lower = t0 / bf * upper;
        ensure(lower <= d * (1.0 + 1e-12) && d <= upper * (1.0 + 1e-12), format!("m={m} d={d} bounds [{lower}, {upper}]"))?;
    }
    Ok(n)
}

fn prop_monotone() -> Result<usize, String> {
    let b = b11101();
    let grid: Vec<CertValue> = (0..50).map(|i| q(i, 50)).collect();
    let dims: Vec<FloatBounds> = grid.iter().map(|t| hausdorff_dim(&b, t.clone()).map(|r| r.dim).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    for w in dims.windows(2) {
        ensure(w[0].hi >= w[1].lo - 1e-10, format!("η increased: {:?} then {:?}", w[0], w[1]))?;
    }
    Ok(grid.len())
}

fn c6_properties() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut report = Vec::new();
    let suites: [Suite; 7] = [
        ("order", &mut prop_order),
        ("canonical", &mut prop_canonical),
        ("greedy round-trip", &mut prop_greedy_round_trip),
        ("Parry/Lyndon/bifurcation", &mut prop_lyndon),
        ("normalization", &mut prop_normalization),
        ("prefix bounds", &mut prop_prefix_bounds),
        ("monotone η", &mut |_| prop_monotone()),
    ];
    for (name, f) in suites {
        let n = f(&mut rng).map_err(|e| format!("{name}: {e}"))?;
        ensure(n >= 50, format!("{name}: only {n} cases"))?;
        report.push(format!("{name} {n}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 120.0, format!("took {secs:.1}s"))?;
    Ok(format!("{} in {secs:.1}s", report.join(", ")))
}

fn c7_holder() -> Check {
    let b = b11101();
    let e = holder_estimate(&b, &q(3, 10), &default_offsets()).map_err(|e| e.to_string())?;
    ensure(e.estimate == HolderValue::Infinite, format!("window estimate {:?}", e.estimate))?;
    let two = BetaSpec::integer(2).unwrap();
    let mut parts = Vec::new();
    for t in [q(1, 8), q(1, 4), q(3, 8)] {
        ensure(is_bifurcation(&two, &t).unwrap(), "not a bifurcation parameter")?;
        let e = holder_estimate(&two, &t, &default_offsets()).map_err(|e| e.to_string())?;
        let HolderValue::Finite(x) = e.estimate else {
            return Err(format!("t={}: no finite estimate", t.to_f64()));
        };
        ensure(x >= e.eta_t.mid() - 0.05, format!("t={}: estimate {x} < η {}", t.to_f64(), e.eta_t.mid()))?;
        parts.push(format!("t={} est {x:.3} ≥ η {:.3}", t.to_f64(), e.eta_t.mid()));
    }
    Ok(format!("window: inf; {}", parts.join("; ")))
}

fn c8_order_independence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let n = 100;
    for _ in 0..n {
        let p = random_pair(&mut rng);
        let a = normalize_with(&p, NormalizeOptions { order: StepOrder::TauFirst, optimized: true });
        let b = normalize_with(&p, NormalizeOptions { order: StepOrder::ThetaFirst, optimized: true });
        match (a, b) {
            (Ok(a), Ok(b)) => ensure(a.a == b.a && a.b == b.b && a.status == b.status, format!("{p:?}: {a:?} vs {b:?}"))?,
            (a, b) => return Err(format!("{p:?}: {a:?} vs {b:?}")),
        }
    }
    Ok(format!("{n} pairs agree"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("worked normalization example", c1_worked_example),
        ("dimension at .01 over one-exp:11101", c2_dimension_at_01),
        ("admissibility fixtures at one-exp:31", c3_admissibility),
        ("rewriting chain with α=(1101)", c4_rewriting),
        ("boundary values of η", c5_boundary),
        ("property suites", c6_properties),
        ("Hölder behaviour", c7_holder),
        ("τ-first vs θ-first normalization", c8_order_independence),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
