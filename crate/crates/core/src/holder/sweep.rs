use rayon::prelude::*;

use crate::betanum::{BetaSpec, CertValue};
use crate::error::Error;
use crate::survivor::{hausdorff_dim, DimResult};

pub const SWEEP_HEADER: [&str; 6] = ["t", "lambda_lo", "lambda_hi", "eta", "hypothesis", "status"];

/// One row of an `η` sweep; a failed point keeps its error.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub t: CertValue,
    pub outcome: Result<DimResult, Error>,
}

impl SweepRow {
    /// Fields in [`SWEEP_HEADER`] order. An absent `λ` (zero entropy) leaves
    /// both enclosure columns empty.
    pub fn record(&self) -> [String; 6] {
        let t = match self.t.as_rational() {
            Some(q) => q.to_string(),
            None => format!("{:.17}", self.t.to_f64()),
        };
        match &self.outcome {
            Ok(r) => {
                let (lo, hi) = r.lambda_bounds.map_or((String::new(), String::new()), |l| (fmt(l.lo), fmt(l.hi)));
                let status = if r.exact { "ok" } else { "bracketed" };
                [t, lo, hi, fmt(r.dim.mid()), r.hypothesis_main1.to_string(), status.into()]
            }
            Err(e) => [t, String::new(), String::new(), String::new(), String::new(), format!("error: {e}")],
        }
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.17e}")
}

/// `η` over a grid, evaluated in parallel. Errors are recorded per row.
pub fn eta_sweep(beta: &BetaSpec, grid: &[CertValue]) -> Vec<SweepRow> {
    grid.par_iter().map(|t| SweepRow { t: t.clone(), outcome: hausdorff_dim(beta, t.clone()) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn origin_row() {
        let two = BetaSpec::integer(2).unwrap();
        let rows = eta_sweep(&two, &[CertValue::from_int(0), CertValue::point(BigRational::new((-1).into(), 2.into()))]);
        let r = rows[0].record();
        assert_eq!((r[0].as_str(), r[4].as_str(), r[5].as_str()), ("0", "holds", "ok"));
        assert_eq!(r[3].parse::<f64>().unwrap(), 1.0);
        let lo: f64 = r[1].parse().unwrap();
        let hi: f64 = r[2].parse().unwrap();
        assert!(lo <= 0.5 && 0.5 <= hi);
        assert!(rows[1].record()[5].starts_with("error"));
    }
}
