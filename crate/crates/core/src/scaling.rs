//! Round measurements over generated instances and least-squares fits.

use crate::dispatch::{run_algo, Algo};
use crate::error::AlgoError;
use crate::graphs::{generate, GenParams, GraphClass};
use crate::netsim::{Net, SimConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub n: usize,
    pub class: GraphClass,
    pub algorithm: Algo,
    pub trial: u64,
    pub rounds: usize,
    pub msgs: usize,
    pub max_in: usize,
    pub max_out: usize,
}

/// One run on the instance generated with seed `trial`, from source 0.
pub fn measure(class: GraphClass, algo: Algo, n: usize, trial: u64, params: &GenParams, cfg: &SimConfig) -> Result<Sample, AlgoError> {
    let g = generate(class, n, params, trial)?;
    let mut net = Net::new(&g, cfg)?;
    run_algo(&mut net, &g, algo, 0)?;
    let m = net.into_metrics();
    Ok(Sample {
        n,
        class,
        algorithm: algo,
        trial,
        rounds: m.rounds,
        msgs: m.local_msgs + m.global_msgs,
        max_in: m.max_in,
        max_out: m.max_out,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub a: f64,
    pub b: f64,
    pub r2: f64,
}

/// Least squares y = a·x + b. None for fewer than two distinct x.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<Fit> {
    assert_eq!(xs.len(), ys.len());
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if xs.is_empty() || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let a = sxy / sxx;
    let b = my - a * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - a * x - b).powi(2)).sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Some(Fit { a, b, r2 })
}

/// Which power of log₂ n the rounds are fitted against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Log,
    LogSquared,
}

impl Model {
    pub fn x(self, n: usize) -> f64 {
        let l = (n as f64).log2();
        match self {
            Model::Log => l,
            Model::LogSquared => l * l,
        }
    }

    /// The model each algorithm's round bound predicts.
    pub fn expected(class: GraphClass, algo: Algo) -> Model {
        match (class, algo) {
            (GraphClass::Cycle, Algo::Diameter) | (_, Algo::ApproxSssp | Algo::ApproxDiameter) => Model::LogSquared,
            _ => Model::Log,
        }
    }
}

/// Fits the mean rounds per size.
pub fn fit_rounds(samples: &[Sample], model: Model) -> Option<Fit> {
    let mut sizes: Vec<usize> = samples.iter().map(|s| s.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let ys: Vec<f64> = sizes
        .iter()
        .map(|&n| {
            let r: Vec<f64> = samples.iter().filter(|s| s.n == n).map(|s| s.rounds as f64).collect();
            r.iter().sum::<f64>() / r.len() as f64
        })
        .collect();
    let xs: Vec<f64> = sizes.iter().map(|&n| model.x(n)).collect();
    linear_fit(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let f = linear_fit(&[1.0, 2.0, 3.0], &[5.0, 7.0, 9.0]).unwrap();
        assert!((f.a - 2.0).abs() < 1e-12 && (f.b - 3.0).abs() < 1e-12 && (f.r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_point_has_no_fit() {
        assert!(linear_fit(&[4.0], &[1.0]).is_none());
        assert!(linear_fit(&[4.0, 4.0], &[1.0, 2.0]).is_none());
    }

    #[test]
    fn noisy_r2() {
        let f = linear_fit(&[0.0, 1.0, 2.0, 3.0, 4.0], &[1.0, 0.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(f.r2 > 0.8 && f.r2 < 1.0);
    }
}
