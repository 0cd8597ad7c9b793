use std::fmt;

/// A pair of `f64` bounds `lo ≤ x ≤ hi` on a real quantity that is reported
/// rather than compared: entropies and dimensions. Transcendental steps are
/// widened by a few ulps so the bounds stay valid under libm rounding.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct FloatBounds {
    pub lo: f64,
    pub hi: f64,
}

const SLACK_ULPS: usize = 4;

fn widen_down(mut x: f64) -> f64 {
    for _ in 0..SLACK_ULPS {
        x = x.next_down();
    }
    x
}

fn widen_up(mut x: f64) -> f64 {
    for _ in 0..SLACK_ULPS {
        x = x.next_up();
    }
    x
}

impl FloatBounds {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "bounds out of order: {lo} > {hi}");
        FloatBounds { lo, hi }
    }

    pub fn exact(x: f64) -> Self {
        FloatBounds { lo: x, hi: x }
    }

    pub fn zero() -> Self {
        FloatBounds::exact(0.0)
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `-ln x` for `0 < lo ≤ hi`.
    pub fn neg_ln(&self) -> FloatBounds {
        assert!(self.lo > 0.0);
        let lo = widen_down(-self.hi.ln());
        let hi = widen_up(-self.lo.ln());
        FloatBounds { lo, hi }
    }

    pub fn ln(&self) -> FloatBounds {
        assert!(self.lo > 0.0);
        FloatBounds { lo: widen_down(self.lo.ln()), hi: widen_up(self.hi.ln()) }
    }

    /// Quotient by a strictly positive bound.
    pub fn div_pos(&self, d: &FloatBounds) -> FloatBounds {
        assert!(d.lo > 0.0);
        let c = [self.lo / d.lo, self.lo / d.hi, self.hi / d.lo, self.hi / d.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        FloatBounds { lo: widen_down(lo), hi: widen_up(hi) }
    }

    /// Clamps into `[lo_bound, hi_bound]`, for quantities known a priori to
    /// lie there.
    pub fn clamp(&self, lo_bound: f64, hi_bound: f64) -> FloatBounds {
        FloatBounds { lo: self.lo.clamp(lo_bound, hi_bound), hi: self.hi.clamp(lo_bound, hi_bound) }
    }

    pub fn hull(&self, other: &FloatBounds) -> FloatBounds {
        FloatBounds { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }
}

impl fmt::Display for FloatBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.15}, {:.15}]", self.lo, self.hi)
    }
}
