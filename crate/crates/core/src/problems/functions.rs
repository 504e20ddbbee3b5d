//! Closed-form benchmark objectives, all in original (unscaled) coordinates.

use std::f64::consts::{E, PI};

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

pub fn alpine(x: &[f64]) -> f64 {
    -x.iter().map(|v| v.sqrt() * v.sin()).product::<f64>()
}

pub fn beale(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (1.5 - a + a * b).powi(2) + (2.25 - a + a * b * b).powi(2) + (2.625 - a + a * b.powi(3)).powi(2)
}

pub fn bohachevsky1(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    a * a + 2.0 * b * b - 0.3 * (3.0 * PI * a).cos() - 0.4 * (4.0 * PI * b).cos() + 0.7
}

pub fn bohachevsky2(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    a * a + 2.0 * b * b - 0.3 * (3.0 * PI * a).cos() * (4.0 * PI * b).cos() + 0.3
}

pub fn bohachevsky3(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    a * a + 2.0 * b * b - 0.3 * (3.0 * PI * a + 4.0 * PI * b).cos() + 0.3
}

pub fn booth(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (a + 2.0 * b - 7.0).powi(2) + (2.0 * a + b - 5.0).powi(2)
}

pub fn branin(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let t = b - 5.1 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0;
    t * t + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos() + 10.0
}

pub fn bukin6(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    100.0 * (b - 0.01 * a * a).abs().sqrt() + 0.01 * (a + 10.0).abs()
}

pub fn colville(x: &[f64]) -> f64 {
    let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
    100.0 * (a * a - b).powi(2)
        + (a - 1.0).powi(2)
        + (c - 1.0).powi(2)
        + 90.0 * (c * c - d).powi(2)
        + 10.1 * ((b - 1.0).powi(2) + (d - 1.0).powi(2))
        + 19.8 * (b - 1.0) * (d - 1.0)
}

pub fn cross_in_tray(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let r = (a * a + b * b).sqrt();
    let g = (a.sin() * b.sin() * (100.0 - r / PI).abs().exp()).abs() + 1.0;
    -1e-4 * g.powf(0.1)
}

pub fn crosslegtable(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let r = (a * a + b * b).sqrt();
    let g = (a.sin() * b.sin() * (100.0 - r / PI).abs().exp()).abs() + 1.0;
    -1.0 / g.powf(0.1)
}

pub fn csendes(x: &[f64]) -> f64 {
    x.iter()
        .map(|&v| if v == 0.0 { 0.0 } else { v.powi(6) * (2.0 + (1.0 / v).sin()) })
        .sum()
}

fn sinc_pi(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        (PI * t).sin() / (PI * t)
    }
}

pub fn damavandi(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let s = (sinc_pi(a - 2.0) * sinc_pi(b - 2.0)).abs();
    (1.0 - s.powi(5)) * (2.0 + (a - 7.0).powi(2) + 2.0 * (b - 7.0).powi(2))
}

pub fn deb01(x: &[f64]) -> f64 {
    -x.iter().map(|v| (5.0 * PI * v).sin().powi(6)).sum::<f64>() / x.len() as f64
}

pub fn deb02(x: &[f64]) -> f64 {
    -x.iter()
        .map(|v| (5.0 * PI * (v.powf(0.75) - 0.05)).sin().powi(6))
        .sum::<f64>()
        / x.len() as f64
}

pub fn dixon_price(x: &[f64]) -> f64 {
    let head = (x[0] - 1.0).powi(2);
    head + x
        .windows(2)
        .enumerate()
        .map(|(k, w)| (k + 2) as f64 * (2.0 * w[1] * w[1] - w[0]).powi(2))
        .sum::<f64>()
}

pub fn drop_wave(x: &[f64]) -> f64 {
    let r2 = x.iter().map(|v| v * v).sum::<f64>();
    -(1.0 + (12.0 * r2.sqrt()).cos()) / (0.5 * r2 + 2.0)
}

pub fn easom(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    -a.cos() * b.cos() * (-((a - PI).powi(2) + (b - PI).powi(2))).exp()
}

pub fn eggholder(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    -(b + 47.0) * (b + a / 2.0 + 47.0).abs().sqrt().sin() - a * (a - (b + 47.0)).abs().sqrt().sin()
}

pub fn goldstein_price(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let p = 1.0
        + (a + b + 1.0).powi(2)
            * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    let q = 30.0
        + (2.0 * a - 3.0 * b).powi(2)
            * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    p * q
}

pub fn griewank(x: &[f64]) -> f64 {
    let s = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let p = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product::<f64>();
    s - p + 1.0
}

const HARTMAN_ALPHA: [f64; 4] = [1.0, 1.2, 3.0, 3.2];

const HARTMAN3_A: [[f64; 3]; 4] = [
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
];

const HARTMAN3_P: [[f64; 3]; 4] = [
    [0.3689, 0.1170, 0.2673],
    [0.4699, 0.4387, 0.7470],
    [0.1091, 0.8732, 0.5547],
    [0.0381, 0.5743, 0.8828],
];

const HARTMAN6_A: [[f64; 6]; 4] = [
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
];

const HARTMAN6_P: [[f64; 6]; 4] = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
];

fn hartman<const N: usize>(x: &[f64], a: &[[f64; N]; 4], p: &[[f64; N]; 4]) -> f64 {
    -(0..4)
        .map(|i| {
            let s: f64 = (0..N).map(|j| a[i][j] * (x[j] - p[i][j]).powi(2)).sum();
            HARTMAN_ALPHA[i] * (-s).exp()
        })
        .sum::<f64>()
}

pub fn hartman3(x: &[f64]) -> f64 {
    hartman(x, &HARTMAN3_A, &HARTMAN3_P)
}

pub fn hartman6(x: &[f64]) -> f64 {
    hartman(x, &HARTMAN6_A, &HARTMAN6_P)
}

pub fn holder_table(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let r = (a * a + b * b).sqrt();
    -(a.sin() * b.cos() * (1.0 - r / PI).abs().exp()).abs()
}

pub fn hump(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (4.0 - 2.1 * a * a + a.powi(4) / 3.0) * a * a + a * b + (-4.0 + 4.0 * b * b) * b * b
}

const LANGERMANN_A: [[f64; 2]; 5] = [[3.0, 5.0], [5.0, 2.0], [2.0, 1.0], [1.0, 4.0], [7.0, 9.0]];
const LANGERMANN_C: [f64; 5] = [1.0, 2.0, 5.0, 2.0, 3.0];

pub fn langermann(x: &[f64]) -> f64 {
    LANGERMANN_A
        .iter()
        .zip(LANGERMANN_C)
        .map(|(a, c)| {
            let s = (x[0] - a[0]).powi(2) + (x[1] - a[1]).powi(2);
            c * (-s / PI).exp() * (PI * s).cos()
        })
        .sum()
}

pub fn levy(x: &[f64]) -> f64 {
    let w: Vec<f64> = x.iter().map(|v| 1.0 + (v - 1.0) / 4.0).collect();
    let n = w.len();
    let head = (PI * w[0]).sin().powi(2);
    let mid: f64 = w[..n - 1]
        .iter()
        .map(|wi| (wi - 1.0).powi(2) * (1.0 + 10.0 * (PI * wi + 1.0).sin().powi(2)))
        .sum();
    let last = (w[n - 1] - 1.0).powi(2) * (1.0 + (2.0 * PI * w[n - 1]).sin().powi(2));
    head + mid + last
}

pub fn matyas(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    0.26 * (a * a + b * b) - 0.48 * a * b
}

pub fn mccormick(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (a + b).sin() + (a - b).powi(2) - 1.5 * a + 2.5 * b + 1.0
}

pub fn michalewicz(x: &[f64]) -> f64 {
    -x.iter()
        .enumerate()
        .map(|(i, v)| v.sin() * ((i + 1) as f64 * v * v / PI).sin().powi(20))
        .sum::<f64>()
}

pub fn perm(x: &[f64]) -> f64 {
    const BETA: f64 = 0.5;
    let n = x.len();
    (1..=n)
        .map(|k| {
            let inner: f64 = (1..=n)
                .map(|j| {
                    let jf = j as f64;
                    (jf.powi(k as i32) + BETA) * ((x[j - 1] / jf).powi(k as i32) - 1.0)
                })
                .sum();
            inner * inner
        })
        .sum()
}

pub fn pinter(x: &[f64]) -> f64 {
    let n = x.len();
    let at = |i: isize| x[i.rem_euclid(n as isize) as usize];
    (0..n)
        .map(|k| {
            let i = (k + 1) as f64;
            let (prev, cur, next) = (at(k as isize - 1), x[k], at(k as isize + 1));
            let a = prev * cur.sin() + next.sin();
            let b = prev * prev - 2.0 * cur + 3.0 * next - cur.cos() + 1.0;
            i * cur * cur + 20.0 * i * a.sin().powi(2) + i * (1.0 + i * b * b).log10()
        })
        .sum()
}

pub fn powell(x: &[f64]) -> f64 {
    (0..x.len() / 4)
        .map(|q| {
            let [a, b, c, d] = [x[4 * q], x[4 * q + 1], x[4 * q + 2], x[4 * q + 3]];
            (a + 10.0 * b).powi(2) + 5.0 * (c - d).powi(2) + (b - 2.0 * c).powi(4) + 10.0 * (a - d).powi(4)
        })
        .sum()
}

const POWER_SUM_B: [f64; 4] = [8.0, 18.0, 44.0, 114.0];

pub fn power_sum(x: &[f64]) -> f64 {
    POWER_SUM_B
        .iter()
        .take(x.len())
        .enumerate()
        .map(|(k, b)| (x.iter().map(|v| v.powi(k as i32 + 1)).sum::<f64>() - b).powi(2))
        .sum()
}

pub fn qing(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| (v * v - (i + 1) as f64).powi(2))
        .sum()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

pub fn rotated_hyper_ellipsoid(x: &[f64]) -> f64 {
    let mut prefix = 0.0;
    let mut total = 0.0;
    for v in x {
        prefix += v;
        total += prefix * prefix;
    }
    total
}

pub const SCHWEFEL_CONSTANT: f64 = 418.982_887_272_433_7;

pub fn schwefel(x: &[f64]) -> f64 {
    SCHWEFEL_CONSTANT * x.len() as f64 - x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>()
}

const SHEKEL_A: [[f64; 4]; 10] = [
    [4.0, 4.0, 4.0, 4.0],
    [1.0, 1.0, 1.0, 1.0],
    [8.0, 8.0, 8.0, 8.0],
    [6.0, 6.0, 6.0, 6.0],
    [3.0, 7.0, 3.0, 7.0],
    [2.0, 9.0, 2.0, 9.0],
    [5.0, 5.0, 3.0, 3.0],
    [8.0, 1.0, 8.0, 1.0],
    [6.0, 2.0, 6.0, 2.0],
    [7.0, 3.6, 7.0, 3.6],
];
const SHEKEL_C: [f64; 10] = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5];

fn shekel(x: &[f64], m: usize) -> f64 {
    -(0..m)
        .map(|i| {
            let s: f64 = (0..4).map(|j| (x[j] - SHEKEL_A[i][j]).powi(2)).sum();
            1.0 / (s + SHEKEL_C[i])
        })
        .sum::<f64>()
}

pub fn shekel5(x: &[f64]) -> f64 {
    shekel(x, 5)
}

pub fn shekel7(x: &[f64]) -> f64 {
    shekel(x, 7)
}

pub fn shekel10(x: &[f64]) -> f64 {
    shekel(x, 10)
}

pub fn shubert(x: &[f64]) -> f64 {
    x.iter()
        .map(|v| {
            (1..=5)
                .map(|j| {
                    let j = j as f64;
                    j * ((j + 1.0) * v + j).cos()
                })
                .sum::<f64>()
        })
        .product()
}

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn styblinski_tang(x: &[f64]) -> f64 {
    0.5 * x
        .iter()
        .map(|v| v.powi(4) - 16.0 * v * v + 5.0 * v)
        .sum::<f64>()
}

pub fn sum_of_powers(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| v.abs().powi(i as i32 + 2))
        .sum()
}

pub fn sum_square(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v * v)
        .sum()
}

pub fn trefethen(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (50.0 * a).sin().exp() + (60.0 * b.exp()).sin() + (70.0 * a.sin()).sin() + (80.0 * b).sin().sin()
        - (10.0 * (a + b)).sin()
        + 0.25 * (a * a + b * b)
}

pub fn trid(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|v| (v - 1.0).powi(2)).sum();
    let cross: f64 = x.windows(2).map(|w| w[0] * w[1]).sum();
    sq - cross
}

pub fn vincent(x: &[f64]) -> f64 {
    -x.iter().map(|v| (10.0 * v.ln()).sin()).sum::<f64>()
}

pub fn zakharov(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let lin: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
        .sum();
    sq + lin.powi(2) + lin.powi(4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bukin6_sample_values() {
        assert!((bukin6(&[-5.0, 0.0]) - 50.05).abs() < 1e-12);
        assert_eq!(bukin6(&[-10.0, 1.0]), 0.0);
    }

    #[test]
    fn rastrigin_origin() {
        assert_eq!(rastrigin(&[0.0; 5]), 0.0);
    }

    #[test]
    fn goldstein_price_optimum() {
        assert_eq!(goldstein_price(&[0.0, -1.0]), 3.0);
    }

    #[test]
    fn csendes_handles_zero() {
        assert_eq!(csendes(&[0.0, 0.0]), 0.0);
        assert!(csendes(&[0.5, -0.1]) > 0.0);
    }
}
