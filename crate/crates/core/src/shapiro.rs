//! Shapiro-Wilk W test with Royston's AS R94 extension, valid for sample
//! sizes 3 through 5000 (the same range R's `shapiro.test` accepts).
//!
//! Coefficients are approximated from the expected normal order statistics
//! m_i = Phi^-1((i - 3/8)/(n + 1/4)) with Royston's polynomial corrections to
//! the two largest weights, and the p-value comes from his normalizing
//! transformations of W (exact arcsine form at n = 3).

use crate::error::Error;
use crate::normal::{std_normal_cdf, std_normal_quantile};

/// Test statistic and p-value of the Shapiro-Wilk normality test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapiroWilk {
    pub w: f64,
    pub p_value: f64,
}

const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
const C3: [f64; 4] = [0.544, -0.39978, 0.025054, -0.0006714];
const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
const C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];
const G: [f64; 2] = [-2.273, 0.459];

fn poly(coef: &[f64], x: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Runs the Shapiro-Wilk test on `sample` (any order; sorted internally).
///
/// Errors on n < 3, n > 5000 and constant samples.
pub fn shapiro_wilk(sample: &[f64]) -> Result<ShapiroWilk, Error> {
    let n = sample.len();
    if n < 3 {
        return Err(Error::SampleTooSmall { n, min: 3 });
    }
    if n > 5000 {
        return Err(Error::SampleTooLarge { n, max: 5000 });
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    let mut x = sample.to_vec();
    x.sort_by(|a, b| a.total_cmp(b));
    let range = x[n - 1] - x[0];
    if range == 0.0 {
        return Err(Error::ConstantSample);
    }

    let half = n / 2;
    // a[i], i = 1..=half: weights for the upper half of the ordered sample.
    let mut a = vec![0.0; half + 1];
    if n == 3 {
        a[1] = std::f64::consts::FRAC_1_SQRT_2;
    } else {
        let an = n as f64;
        let mut summ2 = 0.0;
        for (i, ai) in a.iter_mut().enumerate().skip(1) {
            *ai = std_normal_quantile((i as f64 - 0.375) / (an + 0.25))
                .expect("order-statistic probability is interior");
            summ2 += *ai * *ai;
        }
        summ2 *= 2.0;
        let ssumm2 = summ2.sqrt();
        let rsn = 1.0 / an.sqrt();
        let a1 = poly(&C1, rsn) - a[1] / ssumm2;
        let (i1, fac) = if n > 5 {
            let a2 = -a[2] / ssumm2 + poly(&C2, rsn);
            let fac = ((summ2 - 2.0 * a[1] * a[1] - 2.0 * a[2] * a[2])
                / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2))
                .sqrt();
            a[2] = a2;
            (3, fac)
        } else {
            let fac = ((summ2 - 2.0 * a[1] * a[1]) / (1.0 - 2.0 * a1 * a1)).sqrt();
            (2, fac)
        };
        a[1] = a1;
        for ai in a.iter_mut().skip(i1) {
            *ai /= -fac;
        }
    }

    // W is the squared correlation between the ordered sample and the
    // antisymmetric coefficient vector. Scaling by the range keeps the sums
    // tame for samples far from zero.
    let mut coef = vec![0.0; n];
    for i in 0..half {
        coef[i] = -a[i + 1];
        coef[n - 1 - i] = a[i + 1];
    }
    let sa: f64 = coef.iter().sum::<f64>() / n as f64;
    let sx: f64 = x.iter().map(|v| v / range).sum::<f64>() / n as f64;
    let (mut ssa, mut ssx, mut sax) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let da = coef[i] - sa;
        let dx = x[i] / range - sx;
        ssa += da * da;
        ssx += dx * dx;
        sax += da * dx;
    }
    let ssassx = (ssa * ssx).sqrt();
    let w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    let w = (1.0 - w1).clamp(0.0, 1.0);

    Ok(ShapiroWilk { w, p_value: p_value(w, n) })
}

fn p_value(w: f64, n: usize) -> f64 {
    if w >= 1.0 {
        return 1.0;
    }
    if n == 3 {
        let pi6 = 6.0 / std::f64::consts::PI;
        let stqr = std::f64::consts::FRAC_PI_3; // asin(sqrt(3/4))
        return (pi6 * (w.sqrt().asin() - stqr)).clamp(0.0, 1.0);
    }
    let an = n as f64;
    let y = (1.0 - w).ln();
    let (z, m, s) = if n <= 11 {
        let gamma = poly(&G, an);
        if y >= gamma {
            return f64::MIN_POSITIVE;
        }
        let yt = -(gamma - y).ln();
        (yt, poly(&C3, an), poly(&C4, an).exp())
    } else {
        let ln_n = an.ln();
        (y, poly(&C5, ln_n), poly(&C6, ln_n).exp())
    };
    // Upper-tail normal probability of the transformed statistic.
    1.0 - std_normal_cdf((z - m) / s)
}
