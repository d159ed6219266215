//! Log-slope estimates and CSV output for partial-sum series.

use std::io::Write;

use serde::Serialize;

use super::SumSeries;
use crate::error::{Error, Result};

/// Fewest checkpoints accepted by [`slope_estimate`].
pub const MIN_CHECKPOINTS: usize = 12;
/// Smallest accepted ratio between the last and first checkpoint.
pub const MIN_SPAN: f64 = 1e4;
/// Fraction of the checkpoints, from the top, used for the β̂ regression.
pub const BETA_TAIL: f64 = 0.6;

#[derive(Clone, Debug, Serialize)]
pub struct SlopeEstimate {
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub alpha_predicted: f64,
    pub beta_predicted: f64,
    /// Fitted `log S − α log x − β̂ log log x` intercept, exponentiated.
    pub constant_hat: f64,
    pub points: usize,
    pub residual_rms: f64,
    pub residual_max: f64,
}

/// `α̂` from the log-slope over the last decade, `β̂` by regressing
/// `log(S/x^α)` on `log log x` over the final 60% with the predicted `α`.
pub fn slope_estimate(series: &SumSeries) -> Result<SlopeEstimate> {
    let xs = &series.checkpoints;
    let n = xs.len();
    if n < MIN_CHECKPOINTS {
        return Err(Error::InsufficientData(format!("{n} checkpoints, need {MIN_CHECKPOINTS}")));
    }
    let (first, last) = (xs[0] as f64, xs[n - 1] as f64);
    if last / first < MIN_SPAN {
        return Err(Error::InsufficientData(format!("checkpoints span {first}..{last}, need four decades")));
    }
    if series.values[0] == 0 {
        return Err(Error::InsufficientData("partial sums vanish at the first checkpoint".into()));
    }
    let decade = xs.iter().rposition(|&x| x as f64 <= last / 10.0).unwrap_or(0);
    let alpha_hat = ((series.values[n - 1] as f64).ln() - (series.values[decade] as f64).ln())
        / (last.ln() - (xs[decade] as f64).ln());

    let alpha = ratio_f64(series.alpha);
    let fit = regress(xs, &series.values, alpha, tail_start(n)).expect("enough points");
    Ok(SlopeEstimate {
        alpha_hat,
        beta_hat: fit.slope,
        alpha_predicted: alpha,
        beta_predicted: ratio_f64(series.beta),
        constant_hat: fit.intercept.exp(),
        points: fit.points,
        residual_rms: fit.rms,
        residual_max: fit.max,
    })
}

fn ratio_f64(r: num_rational::Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn tail_start(n: usize) -> usize {
    n - ((n as f64 * BETA_TAIL).ceil() as usize).clamp(1, n)
}

struct Fit {
    slope: f64,
    intercept: f64,
    points: usize,
    rms: f64,
    max: f64,
}

fn regress(xs: &[u64], values: &[u128], alpha: f64, from: usize) -> Option<Fit> {
    let pts: Vec<(f64, f64)> = xs[from..]
        .iter()
        .zip(&values[from..])
        .filter(|(&x, &v)| x > 2 && v > 0)
        .map(|(&x, &v)| {
            let lx = (x as f64).ln();
            (lx.ln(), (v as f64).ln() - alpha * lx)
        })
        .collect();
    let k = pts.len();
    if k < 2 {
        return None;
    }
    let mu = pts.iter().map(|p| p.0).sum::<f64>() / k as f64;
    let mv = pts.iter().map(|p| p.1).sum::<f64>() / k as f64;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mu).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mu) * (p.1 - mv)).sum();
    let slope = sxy / sxx;
    let intercept = mv - slope * mu;
    let res: Vec<f64> = pts.iter().map(|p| p.1 - intercept - slope * p.0).collect();
    Some(Fit {
        slope,
        intercept,
        points: k,
        rms: (res.iter().map(|r| r * r).sum::<f64>() / k as f64).sqrt(),
        max: res.iter().fold(0.0, |m, r| m.max(r.abs())),
    })
}

/// β̂ using only the checkpoints up to each row; `None` until three points are available.
pub fn running_beta(series: &SumSeries) -> Vec<Option<f64>> {
    let alpha = ratio_f64(series.alpha);
    (1..=series.checkpoints.len())
        .map(|upto| {
            if upto < 3 {
                return None;
            }
            regress(&series.checkpoints[..upto], &series.values[..upto], alpha, tail_start(upto)).map(|f| f.slope)
        })
        .collect()
}

/// Columns `x, S(x), S(x)/x^α, running β̂`.
pub fn write_csv<W: Write>(series: &SumSeries, out: W) -> Result<()> {
    let alpha = ratio_f64(series.alpha);
    let betas = running_beta(series);
    let io = |e: csv::Error| Error::Output(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "S(x)", "S(x)/x^alpha", "running_beta"]).map_err(io)?;
    for ((&x, &v), b) in series.checkpoints.iter().zip(&series.values).zip(betas) {
        let normalized = v as f64 / (x as f64).powf(alpha);
        w.write_record([
            x.to_string(),
            v.to_string(),
            format!("{normalized:.8}"),
            b.map(|b| format!("{b:.6}")).unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Output(e.to_string()))?;
    Ok(())
}
