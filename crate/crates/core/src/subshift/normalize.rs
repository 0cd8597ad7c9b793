use crate::error::{Error, Result};
use crate::seqcore::{EPSeq, Word};

/// An ordered pair `t ⪯ u` of binary sequences, standing for
/// `𝒦(t, u) = {x : t ⪯ σ^n(x) ⪯ u for all n ≥ 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexPair {
    t: EPSeq,
    u: EPSeq,
}

impl LexPair {
    pub fn new(t: EPSeq, u: EPSeq) -> Result<Self> {
        if t.max_digit() > 1 || u.max_digit() > 1 {
            return Err(Error::InvalidInput("subshift endpoints must be binary".into()));
        }
        if t > u {
            return Err(Error::InvalidInput(format!("lower endpoint {t} exceeds upper endpoint {u}")));
        }
        Ok(LexPair { t, u })
    }

    pub fn parse(t: &str, u: &str) -> Result<Self> {
        LexPair::new(t.parse()?, u.parse()?)
    }

    pub fn t(&self) -> &EPSeq {
        &self.t
    }

    pub fn u(&self) -> &EPSeq {
        &self.u
    }

    pub fn contains(&self, x: &EPSeq) -> bool {
        membership(x, self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairStatus {
    Nonempty,
    Empty,
    /// `𝒦 ⊂ {0^∞, 1^∞}`: the lower endpoint starts with 1 or the upper with 0.
    DegenerateBoundary,
}

/// `(min 𝒦, max 𝒦)` of a nonempty subshift. For an empty one, `a` and `b`
/// are the last values reached before the endpoints crossed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalizedPair {
    pub a: EPSeq,
    pub b: EPSeq,
    pub status: PairStatus,
}

/// `t ⪯ σ^n(x) ⪯ u` for every `n`; only the distinct shifts are checked.
pub fn membership(x: &EPSeq, p: &LexPair) -> bool {
    in_range(x, &p.t, &p.u)
}

pub(crate) fn in_range(x: &EPSeq, t: &EPSeq, u: &EPSeq) -> bool {
    (0..x.orbit_len()).all(|k| {
        let s = x.shift(k);
        t <= &s && &s <= u
    })
}

fn periodize(s: &EPSeq, n: usize) -> EPSeq {
    EPSeq::periodic(s.prefix(n)).expect("nonempty prefix")
}

/// Step 1 for the lower endpoint: `t` itself if every shift is `⪰ t`, else
/// `(t_1…t_n)^∞` with `n` the first shift falling below `t`.
pub fn step1_min(t: &EPSeq) -> EPSeq {
    match (1..=t.orbit_len()).find(|&k| t.shift(k) < *t) {
        None => t.clone(),
        Some(n) => periodize(t, n),
    }
}

/// Mirror of [`step1_min`] for the upper endpoint.
pub fn step1_max(u: &EPSeq) -> EPSeq {
    match (1..=u.orbit_len()).find(|&k| u.shift(k) > *u) {
        None => u.clone(),
        Some(m) => periodize(u, m),
    }
}

/// Least `k ≥ 1` with `σ^k(a) ≻ u`, if any.
fn first_above(a: &EPSeq, u: &EPSeq) -> Option<usize> {
    (1..=a.orbit_len()).find(|&k| a.shift(k) > *u)
}

fn first_below(b: &EPSeq, t: &EPSeq) -> Option<usize> {
    (1..=b.orbit_len()).find(|&k| b.shift(k) < *t)
}

/// One application of τ, with the index `n` that triggered it.
pub fn tau_step(a: &EPSeq, u: &EPSeq) -> Result<Option<(EPSeq, usize)>> {
    let Some(n) = first_above(a, u) else { return Ok(None) };
    let mut w = a.prefix(n).into_vec();
    if w[n - 1] != 0 {
        return Err(Error::DigitOverflow { seq: a.render(), position: n });
    }
    w[n - 1] = 1;
    Ok(Some((EPSeq::periodic(Word::new(w).unwrap()).unwrap(), n)))
}

/// One application of θ, with its index.
pub fn theta_step(b: &EPSeq, t: &EPSeq) -> Result<Option<(EPSeq, usize)>> {
    let Some(m) = first_below(b, t) else { return Ok(None) };
    let mut w = b.prefix(m).into_vec();
    if w[m - 1] != 1 {
        return Err(Error::DigitUnderflow { seq: b.render(), position: m });
    }
    w[m - 1] = 0;
    Ok(Some((EPSeq::periodic(Word::new(w).unwrap()).unwrap(), m)))
}

/// τ: `a` unchanged if no shift exceeds `u`, else `(a_1…a_{n-1}(a_n + 1))^∞`.
pub fn tau(a: &EPSeq, u: &EPSeq) -> Result<EPSeq> {
    Ok(tau_step(a, u)?.map_or_else(|| a.clone(), |(s, _)| s))
}

/// θ: `b` unchanged if no shift falls below `t`, else
/// `(b_1…b_{m-1}(b_m - 1))^∞`.
pub fn theta(b: &EPSeq, t: &EPSeq) -> Result<EPSeq> {
    Ok(theta_step(b, t)?.map_or_else(|| b.clone(), |(s, _)| s))
}

// Each step moves the marked index forward within one period, so chains are
// short; this only guards against that failing.
const MAX_CHAIN: usize = 1 << 16;

/// Which of Steps 2 and 3 runs first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum StepOrder {
    #[default]
    TauFirst,
    ThetaFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormalizeOptions {
    pub order: StepOrder,
    /// Compare against the already normalized opposite endpoint (`b^(1)` in
    /// Step 2, `a` in Step 3) instead of the original `u`, `t`.
    pub optimized: bool,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions { order: StepOrder::TauFirst, optimized: true }
    }
}

/// One run of a normalization, with the intermediate endpoints.
#[derive(Clone, Debug, Default)]
pub struct NormalizeTrace {
    pub tau_chain: Vec<(EPSeq, usize)>,
    pub theta_chain: Vec<(EPSeq, usize)>,
    /// Rounds of the alternating τ/θ pass beyond the first.
    pub extra_rounds: usize,
}

/// `(min 𝒦(t, u), max 𝒦(t, u))` by Steps 1–3 with the default options.
pub fn normalize(p: &LexPair) -> Result<NormalizedPair> {
    normalize_with(p, NormalizeOptions::default())
}

pub fn normalize_with(p: &LexPair, opts: NormalizeOptions) -> Result<NormalizedPair> {
    normalize_traced(p, opts).map(|(n, _)| n)
}

/// Normalization that also returns the τ and θ chains. An empty subshift is
/// always reported as `a = 1^∞, b = 0^∞`, whichever step found it empty.
pub fn normalize_traced(p: &LexPair, opts: NormalizeOptions) -> Result<(NormalizedPair, NormalizeTrace)> {
    let (mut n, trace) = normalize_raw(p, opts)?;
    if n.status == PairStatus::Empty {
        n.a = EPSeq::periodic(Word::new(vec![1]).unwrap()).unwrap();
        n.b = EPSeq::zero();
    }
    Ok((n, trace))
}

fn normalize_raw(p: &LexPair, opts: NormalizeOptions) -> Result<(NormalizedPair, NormalizeTrace)> {
    let mut trace = NormalizeTrace::default();
    let (t, u) = (&p.t, &p.u);
    let one = EPSeq::periodic(Word::new(vec![1]).unwrap()).unwrap();
    let zero = EPSeq::zero();
    // first digits force 𝒦 ⊂ {1^∞} or {0^∞}
    if t.digit(0) == 1 {
        let status = if *u == one { PairStatus::DegenerateBoundary } else { PairStatus::Empty };
        let b = if status == PairStatus::Empty { u.clone() } else { one.clone() };
        return Ok((NormalizedPair { a: one, b, status }, trace));
    }
    if u.digit(0) == 0 {
        let status = if *t == zero { PairStatus::DegenerateBoundary } else { PairStatus::Empty };
        let a = if status == PairStatus::Empty { t.clone() } else { zero.clone() };
        return Ok((NormalizedPair { a, b: zero, status }, trace));
    }

    let mut a = step1_min(t);
    let mut b = step1_max(u);
    let empty = |a: &EPSeq, b: &EPSeq| a > b;
    if empty(&a, &b) {
        return Ok((NormalizedPair { a, b, status: PairStatus::Empty }, trace));
    }
    let (u_ref, t_ref) = if opts.optimized { (None, None) } else { (Some(u.clone()), Some(t.clone())) };

    let run_tau = |a: &mut EPSeq, against: &EPSeq, chain: &mut Vec<(EPSeq, usize)>| -> Result<bool> {
        let mut changed = false;
        while let Some((next, n)) = tau_step(a, against)? {
            if chain.len() >= MAX_CHAIN {
                return Err(Error::InvalidInput(format!("tau iteration on {a_or_b} did not settle", a_or_b = next)));
            }
            chain.push((next.clone(), n));
            *a = next;
            changed = true;
            if *a > *against {
                break;
            }
        }
        Ok(changed)
    };
    let run_theta = |b: &mut EPSeq, against: &EPSeq, chain: &mut Vec<(EPSeq, usize)>| -> Result<bool> {
        let mut changed = false;
        while let Some((next, m)) = theta_step(b, against)? {
            if chain.len() >= MAX_CHAIN {
                return Err(Error::InvalidInput(format!("theta iteration on {a_or_b} did not settle", a_or_b = next)));
            }
            chain.push((next.clone(), m));
            *b = next;
            changed = true;
            if *b < *against {
                break;
            }
        }
        Ok(changed)
    };

    // first pass, possibly against the original endpoints
    match opts.order {
        StepOrder::TauFirst => {
            let against = u_ref.clone().unwrap_or_else(|| b.clone());
            run_tau(&mut a, &against, &mut trace.tau_chain)?;
            if empty(&a, &b) {
                return Ok((NormalizedPair { a, b, status: PairStatus::Empty }, trace));
            }
            let against = t_ref.clone().unwrap_or_else(|| a.clone());
            run_theta(&mut b, &against, &mut trace.theta_chain)?;
        }
        StepOrder::ThetaFirst => {
            let against = t_ref.clone().unwrap_or_else(|| a.clone());
            run_theta(&mut b, &against, &mut trace.theta_chain)?;
            if empty(&a, &b) {
                return Ok((NormalizedPair { a, b, status: PairStatus::Empty }, trace));
            }
            let against = u_ref.clone().unwrap_or_else(|| b.clone());
            run_tau(&mut a, &against, &mut trace.tau_chain)?;
        }
    }
    // alternate until both endpoints are fixed against each other
    loop {
        if empty(&a, &b) {
            return Ok((NormalizedPair { a, b, status: PairStatus::Empty }, trace));
        }
        let against = b.clone();
        let ca = run_tau(&mut a, &against, &mut trace.tau_chain)?;
        if empty(&a, &b) {
            return Ok((NormalizedPair { a, b, status: PairStatus::Empty }, trace));
        }
        let against = a.clone();
        let cb = run_theta(&mut b, &against, &mut trace.theta_chain)?;
        if !ca && !cb {
            break;
        }
        trace.extra_rounds += 1;
        log::info!("normalization of ({t}, {u}) needed an extra tau/theta round");
    }
    if empty(&a, &b) {
        return Ok((NormalizedPair { a, b, status: PairStatus::Empty }, trace));
    }
    let status = if a.digit(0) == 1 || b.digit(0) == 0 { PairStatus::DegenerateBoundary } else { PairStatus::Nonempty };
    Ok((NormalizedPair { a, b, status }, trace))
}

impl NormalizedPair {
    pub fn is_nonempty(&self) -> bool {
        self.status != PairStatus::Empty
    }

    pub fn as_pair(&self) -> Option<LexPair> {
        (self.status != PairStatus::Empty).then(|| LexPair { t: self.a.clone(), u: self.b.clone() })
    }

    /// `a` and `b` order every shift of both endpoints.
    pub fn is_fixed_point(&self) -> bool {
        in_range(&self.a, &self.a, &self.b) && in_range(&self.b, &self.a, &self.b)
    }
}
