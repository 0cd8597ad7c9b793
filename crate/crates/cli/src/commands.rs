use std::fs::File;
use std::io::{self, Write};

use bts_core::betanum::{beta_from_one_expansion, eval_pi, parse_rational, BetaKind, FloatBounds};
use bts_core::expansion::{alpha_of, expand, is_admissible, Expanded, ExpansionKind};
use bts_core::holder::{eta_sweep, geometric_offsets, holder_estimate, HolderValue, SWEEP_HEADER};
use bts_core::seqcore::is_lyndon;
use bts_core::subshift::{
    enumerate_if_finite, entropy_of_normalized, normalize_traced, sft_entropy_oracle, LexPair, NormalizeOptions,
    NormalizedPair, PairStatus, StepOrder,
};
use bts_core::survivor::{greedy_of, hausdorff_dim, is_bifurcation_seq, stable_component, DimResult, TParam};
use bts_core::{parse_seq, BetaSpec, CertValue, EPSeq, Error, Limits, Result, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::args::*;

/// What a command produced: a JSON document, its text rendering, and whether
/// the result is a domain failure (exit 1) despite being printable.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub domain_failure: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, domain_failure: false }
    }
}

pub struct Settings {
    pub limits: Limits,
}

fn beta(spec: &str, s: &Settings) -> Result<BetaSpec> {
    Ok(BetaSpec::parse(spec)?.with_limits(s.limits))
}

fn rational(text: &str) -> Result<BigRational> {
    parse_rational(text).ok_or_else(|| Error::InvalidInput(format!("{text:?} is not a rational literal")))
}

fn t_param(text: &str) -> Result<TParam> {
    match text.strip_prefix("seq:") {
        Some(lit) => Ok(TParam::Seq(parse_seq(lit)?)),
        None => Ok(TParam::Value(CertValue::point(rational(text)?))),
    }
}

fn t_value(p: &TParam, b: &BetaSpec) -> Result<CertValue> {
    match p {
        TParam::Value(v) => Ok(v.clone()),
        TParam::Seq(s) => eval_pi(s, b),
    }
}

fn bounds_json(b: &FloatBounds) -> Value {
    json!({ "lo": b.lo, "hi": b.hi })
}

fn cert_json(v: &CertValue) -> Value {
    let (lo, hi) = v.f64_bounds();
    match v.as_rational() {
        Some(q) => json!({ "exact": q.to_string(), "lo": lo, "hi": hi }),
        None => json!({ "lo": lo, "hi": hi }),
    }
}

fn beta_json(b: &BetaSpec) -> Value {
    let (lo, hi) = b.f64_bounds();
    json!({ "spec": b.label(), "lo": lo, "hi": hi, "gamma": b.gamma() })
}

pub fn expand_cmd(a: &ExpandArgs, s: &Settings) -> Result<Outcome> {
    let b = beta(&a.beta.beta, s)?;
    let x = t_value(&t_param(&a.x)?, &b)?;
    let kind = match a.kind {
        Kind::Greedy => ExpansionKind::Greedy,
        Kind::Quasi => ExpansionKind::QuasiGreedy,
    };
    match expand(&x, &b, kind, s.limits.digit_depth)? {
        Expanded::Exact(seq) => Ok(Outcome::ok(
            json!({ "beta": beta_json(&b), "exact": true, "seq": seq.render() }),
            seq.render(),
        )),
        Expanded::Prefix(w) => {
            let w = Word::new(w.digits()[..a.digits.min(w.len())].to_vec())?;
            Ok(Outcome::ok(json!({ "beta": beta_json(&b), "exact": false, "prefix": w.to_string() }), format!("{w}...")))
        }
    }
}

pub fn alpha_cmd(a: &BetaArg, s: &Settings) -> Result<Outcome> {
    let b = beta(&a.beta, s)?;
    let al = alpha_of(&b)?;
    let json = match al.as_seq() {
        Some(seq) => json!({ "beta": beta_json(&b), "exact": true, "alpha": seq.render() }),
        None => json!({ "beta": beta_json(&b), "exact": false, "prefix": al.prefix(64)?.to_string() }),
    };
    Ok(Outcome::ok(json, al.render(64)))
}

pub fn admissible_cmd(a: &AdmissibleArgs, s: &Settings) -> Result<Outcome> {
    let b = beta(&a.beta.beta, s)?;
    let seq = parse_seq(&a.seq)?;
    let ok = is_admissible(&seq, &b)?;
    Ok(Outcome::ok(json!({ "beta": beta_json(&b), "seq": seq.render(), "admissible": ok }), ok.to_string()))
}

pub fn solve_beta_cmd(a: &SolveBetaArgs, s: &Settings) -> Result<Outcome> {
    let b = beta_from_one_expansion(&Word::parse(&a.one_exp)?)?.with_limits(s.limits);
    let poly = match b.kind() {
        BetaKind::PolyRoot { coeffs, .. } => coeffs.iter().rev().map(BigInt::to_string).collect::<Vec<_>>().join(","),
        BetaKind::Rational(q) => format!("1,-{q}"),
    };
    let (lo, hi) = b.f64_bounds();
    let text = format!("beta in [{lo:.17}, {hi:.17}]\npoly {poly}\ngamma {}", b.gamma());
    Ok(Outcome::ok(json!({ "beta": beta_json(&b), "poly": poly }), text))
}

fn pair(p: &PairArgs) -> Result<(LexPair, NormalizeOptions)> {
    let lp = LexPair::new(parse_seq(&p.t)?, parse_seq(&p.u)?)?;
    let order = if p.theta_first { StepOrder::ThetaFirst } else { StepOrder::TauFirst };
    Ok((lp, NormalizeOptions { order, optimized: !p.unoptimized }))
}

fn status_str(s: PairStatus) -> &'static str {
    match s {
        PairStatus::Nonempty => "nonempty",
        PairStatus::Empty => "empty",
        PairStatus::DegenerateBoundary => "degenerate",
    }
}

fn normalized_json(n: &NormalizedPair) -> Value {
    json!({ "a": n.a.render(), "b": n.b.render(), "status": status_str(n.status) })
}

pub fn normalize_cmd(p: &PairArgs, _s: &Settings) -> Result<Outcome> {
    let (lp, opts) = pair(p)?;
    let (n, trace) = normalize_traced(&lp, opts)?;
    let chain = |c: &[(EPSeq, usize)]| c.iter().map(|(x, n)| json!({ "seq": x.render(), "position": n })).collect::<Vec<_>>();
    let json = json!({
        "normalized": normalized_json(&n),
        "tau_chain": chain(&trace.tau_chain),
        "theta_chain": chain(&trace.theta_chain),
        "extra_rounds": trace.extra_rounds,
    });
    let text = format!("a {}\nb {}\nstatus {}", n.a, n.b, status_str(n.status));
    Ok(Outcome { json, text, domain_failure: n.status == PairStatus::Empty })
}

pub fn entropy_cmd(a: &EntropyArgs, _s: &Settings) -> Result<Outcome> {
    let (lp, opts) = pair(&a.pair)?;
    let (n, _) = normalize_traced(&lp, opts)?;
    let r = entropy_of_normalized(n)?;
    let mut json = json!({
        "normalized": normalized_json(&r.normalized),
        "entropy": bounds_json(&r.entropy),
        "lambda": r.lambda.as_ref().map(cert_json),
    });
    let mut text = format!(
        "entropy {}\na {}\nb {}\nstatus {}",
        fmt_bounds_mid(&r.entropy),
        r.normalized.a,
        r.normalized.b,
        status_str(r.normalized.status)
    );
    if let Some(l) = &r.lambda {
        let (lo, hi) = l.f64_bounds();
        text.push_str(&format!("\nlambda [{lo:.17}, {hi:.17}]"));
    }
    if let Some(cap) = a.enumerate {
        let members = enumerate_if_finite(&r.normalized, cap)?;
        let list = members.as_ref().map(|m| m.iter().map(EPSeq::render).collect::<Vec<_>>());
        json["members"] = json!(list);
        match list {
            Some(l) => text.push_str(&format!("\nmembers {}", l.join(" "))),
            None => text.push_str("\nmembers infinite"),
        }
    }
    Ok(Outcome { json, text, domain_failure: r.normalized.status == PairStatus::Empty })
}

fn fmt_bounds_mid(b: &FloatBounds) -> String {
    if b.lo == b.hi {
        format!("{}", b.lo)
    } else {
        format!("{:.15} [{:.17}, {:.17}]", b.mid(), b.lo, b.hi)
    }
}

pub fn sft_cmd(a: &SftArgs, _s: &Settings) -> Result<Outcome> {
    let words = a.forbid.iter().filter(|w| !w.is_empty()).map(|w| Word::parse(w)).collect::<Result<Vec<_>>>()?;
    if words.iter().any(|w| w.max_digit() > 1) {
        return Err(Error::InvalidInput("forbidden words must be binary".into()));
    }
    let h = sft_entropy_oracle(&words, a.n);
    Ok(Outcome::ok(json!({ "entropy": if h.is_finite() { json!(h) } else { Value::Null }, "n": a.n }), format!("{h}")))
}

fn dim_json(r: &DimResult) -> Value {
    json!({
        "beta": beta_json(&r.beta),
        "t": cert_json(&r.t),
        "t_seq": r.t_seq.render(),
        "exact": r.exact,
        "lambda": r.lambda_bounds.as_ref().map(bounds_json),
        "entropy": bounds_json(&r.entropy),
        "eta": bounds_json(&r.dim),
        "hypothesis": { "orbit": r.hypothesis.orbit.to_string(), "literal": r.hypothesis.literal.to_string() },
        "normalized": r.normalized.as_ref().map(normalized_json),
    })
}

pub fn dim_cmd(a: &TArgs, s: &Settings) -> Result<Outcome> {
    let b = beta(&a.beta.beta, s)?;
    let r = hausdorff_dim(&b, t_param(&a.t)?)?;
    let mut text = format!("eta {}\nt_seq {}", fmt_bounds_mid(&r.dim), r.t_seq.render());
    if let Some(l) = &r.lambda_bounds {
        text.push_str(&format!("\nlambda [{:.17}, {:.17}]", l.lo, l.hi));
    }
    text.push_str(&format!("\nhypothesis {} (literal reading: {})", r.hypothesis.orbit, r.hypothesis.literal));
    if !r.exact {
        text.push_str("\nbracketed");
    }
    Ok(Outcome::ok(dim_json(&r), text))
}

pub fn bifurcation_cmd(a: &TArgs, s: &Settings) -> Result<Outcome> {
    let b = beta(&a.beta.beta, s)?;
    let al = alpha_of(&b)?;
    let g = greedy_of(&b, &al, &t_param(&a.t)?)?;
    let member = is_bifurcation_seq(&g);
    let lyndon = if g.is_eventually_zero() && !g.is_zero() { Some(is_lyndon(g.pre())?) } else { None };
    let mut text = format!("greedy {}\nbifurcation {member}", g.render());
    if let Some(l) = lyndon {
        text.push_str(&format!("\nlyndon {l}"));
    }
    let interval = stable_component(&b, &g)?;
    let iv = interval.as_ref().map(|i| {
        text.push_str(&format!("\nstable interval (.{}, {})", i.r_word, i.r_star_seq));
        json!({
            "r_word": i.r_word.to_string(),
            "r": cert_json(&i.r_value),
            "r_star_seq": i.r_star_seq.render(),
            "r_star": cert_json(&i.r_star_value),
        })
    });
    let json = json!({ "beta": beta_json(&b), "greedy": g.render(), "bifurcation": member, "lyndon": lyndon, "stable_interval": iv });
    Ok(Outcome::ok(json, text))
}

pub fn sweep_cmd(a: &SweepArgs, s: &Settings) -> Result<Outcome> {
    let b = beta(&a.beta.beta, s)?;
    let (lo, hi) = (rational(&a.t_min)?, rational(&a.t_max)?);
    if a.steps == 0 || lo > hi {
        return Err(Error::InvalidInput("need t-min ≤ t-max and at least one step".into()));
    }
    let n = BigRational::from_integer(BigInt::from(a.steps.max(2) - 1));
    let grid: Vec<CertValue> = if a.steps == 1 {
        vec![CertValue::point(lo.clone())]
    } else {
        (0..a.steps).map(|i| CertValue::point(&lo + (&hi - &lo) * BigRational::from_integer(i.into()) / &n)).collect()
    };
    let rows = eta_sweep(&b, &grid);
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(SWEEP_HEADER).map_err(csv_err)?;
        for r in &rows {
            w.write_record(r.record()).map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
    let csv_text = String::from_utf8(buf).expect("csv output is UTF-8");
    let text = match &a.out {
        Some(path) => {
            File::create(path)
                .and_then(|mut f| f.write_all(csv_text.as_bytes()))
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            format!("wrote {} rows to {} ({failed} failed)", rows.len(), path.display())
        }
        None => csv_text.trim_end().to_string(),
    };
    let json = json!({ "rows": rows.len(), "failed": failed, "out": a.out.as_ref().map(|p| p.display().to_string()) });
    Ok(Outcome::ok(json, text))
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidInput(e.to_string())
}

/// Parses `geometric:FIRST,COUNT`; `FIRST` may use an exponent (`1e-2`).
pub fn parse_offsets(text: &str) -> Result<Vec<BigRational>> {
    let bad = || Error::InvalidInput(format!("bad offsets {text:?}; expected geometric:FIRST,COUNT"));
    let rest = text.strip_prefix("geometric:").ok_or_else(bad)?;
    let (first, count) = rest.split_once(',').ok_or_else(bad)?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    let first = match first.split_once(['e', 'E']) {
        Some((m, e)) => {
            let m = parse_rational(m).ok_or_else(bad)?;
            let e: i32 = e.parse().map_err(|_| bad())?;
            let p = BigRational::from_integer(num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize));
            if e < 0 {
                m / p
            } else {
                m * p
            }
        }
        None => parse_rational(first).ok_or_else(bad)?,
    };
    if first <= BigRational::zero() || first >= BigRational::one() || count == 0 {
        return Err(bad());
    }
    Ok(geometric_offsets(&first, count))
}

pub fn holder_cmd(a: &HolderArgs, s: &Settings) -> Result<Outcome> {
    let b = beta(&a.t.beta.beta, s)?;
    let t = t_value(&t_param(&a.t.t)?, &b)?;
    let e = holder_estimate(&b, &t, &parse_offsets(&a.offsets)?)?;
    let est = match e.estimate {
        HolderValue::Finite(x) => json!(x),
        HolderValue::Infinite => json!("inf"),
    };
    let samples: Vec<Value> = e
        .samples
        .iter()
        .map(|x| json!({ "t": x.t.to_f64(), "offset": x.offset.to_string(), "diff": x.diff, "ratio": x.ratio }))
        .collect();
    let text = format!("estimate {}\neta {}", e.estimate, fmt_bounds_mid(&e.eta_t));
    Ok(Outcome::ok(json!({ "t": cert_json(&e.t), "eta": bounds_json(&e.eta_t), "estimate": est, "samples": samples }), text))
}

pub fn write_text(out: &mut impl Write, text: &str) -> io::Result<()> {
    writeln!(out, "{text}")
}
