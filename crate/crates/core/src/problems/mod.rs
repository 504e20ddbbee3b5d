//! Benchmark catalog with known optima, plus the domain-shift transform
//! used for perturbed runs.

mod functions;
pub mod manifest;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::Problem;

pub use functions::SCHWEFEL_CONSTANT;

type Objective = fn(&[f64]) -> f64;

/// A test-function family instantiable at one or more dimensions.
#[derive(Clone, Copy)]
pub struct Family {
    pub name: &'static str,
    pub dims: &'static [usize],
    pub convex: bool,
    pub multimodal: bool,
    /// Bounds of dimension `i` (1-based) for an `n`-dimensional instance.
    bounds: fn(usize, usize) -> (f64, f64),
    f_star: fn(usize) -> f64,
    x_star: fn(usize) -> Vec<f64>,
    objective: Objective,
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Family")
            .field("name", &self.name)
            .field("dims", &self.dims)
            .finish_non_exhaustive()
    }
}

/// One catalog row: a family at a fixed dimension.
#[derive(Clone)]
pub struct ProblemSpec {
    pub family: &'static str,
    pub n: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub f_star: f64,
    pub x_star: Option<Vec<f64>>,
    pub convex: bool,
    pub multimodal: bool,
    objective: Objective,
}

impl std::fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("family", &self.family)
            .field("n", &self.n)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("f_star", &self.f_star)
            .finish_non_exhaustive()
    }
}

impl ProblemSpec {
    pub fn instantiate(&self) -> Result<Problem> {
        let p = Problem::new(
            self.family,
            self.lower.clone(),
            self.upper.clone(),
            self.f_star,
            self.objective,
        )?
        .with_tags(self.convex, self.multimodal);
        match &self.x_star {
            Some(x) => p.with_optimum(x.clone()),
            None => Ok(p),
        }
    }
}

impl Family {
    pub fn spec(&self, n: usize) -> Result<ProblemSpec> {
        if !self.dims.contains(&n) {
            return Err(Error::NotFound {
                name: self.name.to_string(),
                n,
            });
        }
        let (lower, upper) = (1..=n).map(|i| (self.bounds)(i, n)).unzip();
        Ok(ProblemSpec {
            family: self.name,
            n,
            lower,
            upper,
            f_star: (self.f_star)(n),
            x_star: Some((self.x_star)(n)),
            convex: self.convex,
            multimodal: self.multimodal,
            objective: self.objective,
        })
    }
}

const D2: &[usize] = &[2];
const D3: &[usize] = &[3];
const D4: &[usize] = &[4];
const D6: &[usize] = &[6];
const D2_5_10: &[usize] = &[2, 5, 10];

const ALPINE_X: f64 = 7.917_052_725_704_987;
const ALPINE_F: f64 = 2.808_131_180_007_002_6;
const STYBLINSKI_X: f64 = -2.903_534_031_400_778_5;
const STYBLINSKI_F: f64 = -39.166_165_703_771_41;

const MICHALEWICZ_X: [f64; 10] = [
    2.202_905_519_952_912_6,
    PI / 2.0,
    1.284_991_570_272_413,
    1.923_058_469_616_361_7,
    1.720_469_772_221_191_7,
    PI / 2.0,
    1.454_413_971_098_677,
    1.756_086_520_760_216,
    1.655_717_416_547_573_2,
    PI / 2.0,
];
const MICHALEWICZ_F: [f64; 10] = [
    -0.801_303_410_098_553_1,
    -1.0,
    -0.959_091_269_896_005_5,
    -0.938_462_418_472_083_1,
    -0.988_801_080_621_505_1,
    -1.0,
    -0.993_227_135_355_881_7,
    -0.982_872_036_272_209_6,
    -0.996_394_364_925_103_5,
    -1.0,
];

fn zero(_: usize) -> f64 {
    0.0
}

fn zeros(n: usize) -> Vec<f64> {
    vec![0.0; n]
}

fn ones(n: usize) -> Vec<f64> {
    vec![1.0; n]
}

macro_rules! family {
    ($name:expr, $dims:expr, $convex:expr, $multi:expr, $f:path,
     bounds = $bounds:expr, f_star = $fstar:expr, x_star = $xstar:expr) => {
        Family {
            name: $name,
            dims: $dims,
            convex: $convex,
            multimodal: $multi,
            bounds: $bounds,
            f_star: $fstar,
            x_star: $xstar,
            objective: $f,
        }
    };
}

const C: bool = true;
const NC: bool = false;
const MM: bool = true;
const UM: bool = false;

/// Every family, in catalog order.
pub fn families() -> &'static [Family] {
    use functions as f;
    static FAMILIES: &[Family] = &[
        family!("Ackley", D2_5_10, NC, MM, f::ackley,
            bounds = |_, _| (-18.0, 47.0), f_star = zero, x_star = zeros),
        family!("Alpine", D2_5_10, NC, MM, f::alpine,
            bounds = |i, _| { let r = 2f64.powf(1.0 / i as f64); (r, 8.0 + r) },
            f_star = |n| -ALPINE_F.powi(n as i32), x_star = |n| vec![ALPINE_X; n]),
        family!("Beale", D2, NC, MM, f::beale,
            bounds = |_, _| (-4.5, 4.5), f_star = zero, x_star = |_| vec![3.0, 0.5]),
        family!("Bohachevsky1", D2, C, UM, f::bohachevsky1,
            bounds = |_, _| (-55.0, 145.0), f_star = zero, x_star = zeros),
        family!("Bohachevsky2", D2, NC, MM, f::bohachevsky2,
            bounds = |_, _| (-55.0, 145.0), f_star = zero, x_star = zeros),
        family!("Bohachevsky3", D2, NC, MM, f::bohachevsky3,
            bounds = |_, _| (-55.0, 145.0), f_star = zero, x_star = zeros),
        family!("Booth", D2, C, UM, f::booth,
            bounds = |_, _| (-10.0, 10.0), f_star = zero, x_star = |_| vec![1.0, 3.0]),
        family!("Branin", D2, NC, MM, f::branin,
            bounds = |i, _| if i == 1 { (-5.0, 10.0) } else { (10.0, 15.0) },
            f_star = |_| 5.0 / (4.0 * PI), x_star = |_| vec![-PI, 12.275]),
        family!("Bukin6", D2, C, MM, f::bukin6,
            bounds = |i, _| if i == 1 { (-15.0, 5.0) } else { (-3.0, 3.0) },
            f_star = zero, x_star = |_| vec![-10.0, 1.0]),
        family!("Colville", D4, NC, MM, f::colville,
            bounds = |_, _| (-10.0, 10.0), f_star = zero, x_star = ones),
        family!("Cross_in_Tray", D2, NC, MM, f::cross_in_tray,
            bounds = |_, _| (0.0, 10.0), f_star = |_| -2.062_611_870_822_739_7,
            x_star = |_| vec![1.349_406_614_2, 1.349_406_614_2]),
        family!("Crosslegtable", D2, NC, MM, f::crosslegtable,
            bounds = |_, _| (-10.0, 15.0), f_star = |_| -1.0, x_star = zeros),
        family!("Csendes", D2_5_10, C, MM, f::csendes,
            bounds = |_, _| (-10.0, 25.0), f_star = zero, x_star = zeros),
        family!("Damavandi", D2, NC, MM, f::damavandi,
            bounds = |_, _| (0.0, 14.0), f_star = zero, x_star = |_| vec![2.0, 2.0]),
        family!("Deb01", D2_5_10, NC, MM, f::deb01,
            bounds = |_, _| (-0.55, 1.45), f_star = |_| -1.0, x_star = |n| vec![0.1; n]),
        family!("Deb02", D2_5_10, NC, MM, f::deb02,
            bounds = |_, _| (0.225, 1.225), f_star = |_| -1.0,
            x_star = |n| vec![0.35f64.powf(4.0 / 3.0); n]),
        family!("Dixon_and_Price", D2_5_10, C, MM, f::dixon_price,
            bounds = |_, _| (-10.0, 10.0), f_star = zero,
            x_star = |n| (1..=n).map(|i| {
                let p = 2f64.powi(i as i32);
                2f64.powf(-(p - 2.0) / p)
            }).collect()),
        family!("Drop_wave", D2, NC, MM, f::drop_wave,
            bounds = |_, _| (-4.0, 6.0), f_star = |_| -1.0, x_star = zeros),
        family!("Easom", D2, NC, MM, f::easom,
            bounds = |i, _| (-100.0 / (i as f64 + 1.0), 100.0 * i as f64),
            f_star = |_| -1.0, x_star = |_| vec![PI, PI]),
        family!("Eggholder", D2, NC, MM, f::eggholder,
            bounds = |_, _| (-512.0, 512.0), f_star = |_| -959.640_662_720_850_7,
            x_star = |_| vec![512.0, 404.231_804_993_864_6]),
        family!("Goldstein_and_Price", D2, NC, MM, f::goldstein_price,
            bounds = |_, _| (-1.1, 2.9), f_star = |_| 3.0, x_star = |_| vec![0.0, -1.0]),
        family!("Griewank", D2_5_10, NC, MM, f::griewank,
            bounds = |i, _| (-(600.0 * i as f64).sqrt(), 600.0 / (i as f64).sqrt()),
            f_star = zero, x_star = zeros),
        family!("Hartman3", D3, NC, MM, f::hartman3,
            bounds = |_, _| (0.0, 1.0), f_star = |_| -3.862_779_787_332_663,
            x_star = |_| vec![0.114_588_881_225_412_87, 0.555_648_895_473_937_1, 0.852_546_984_217_274_6]),
        family!("Hartman6", D6, NC, MM, f::hartman6,
            bounds = |_, _| (0.0, 1.0), f_star = |_| -3.322_368_011_415_514_7,
            x_star = |_| vec![
                0.201_689_509_093_657_46, 0.150_010_693_541_113_74, 0.476_873_972_925_099_8,
                0.275_332_427_522_078_2, 0.311_651_617_239_568_6, 0.657_300_534_553_670_2,
            ]),
        family!("Holder_Table", D2, NC, MM, f::holder_table,
            bounds = |_, _| (-10.0, 10.0), f_star = |_| -19.208_502_567_886_75,
            x_star = |_| vec![8.055_023_466_339_607, 9.664_590_027_738_118]),
        family!("Hump", D2, NC, MM, f::hump,
            bounds = |_, _| (-5.0, 5.0), f_star = |_| -1.031_628_453_489_877_4,
            x_star = |_| vec![0.089_842_008_935_272_33, -0.712_656_403_019_058]),
        family!("Langermann", D2, NC, MM, f::langermann,
            bounds = |_, _| (0.0, 10.0), f_star = |_| -4.155_809_291_847_786,
            x_star = |_| vec![2.793_402_208_699_449_7, 1.597_232_504_278_071_7]),
        family!("Levy", D2_5_10, NC, MM, f::levy,
            bounds = |_, _| (-10.0, 10.0), f_star = zero, x_star = ones),
        family!("Matyas", D2, C, UM, f::matyas,
            bounds = |_, _| (-5.5, 14.5), f_star = zero, x_star = zeros),
        family!("McCormick", D2, C, MM, f::mccormick,
            bounds = |i, _| if i == 1 { (-1.5, 4.0) } else { (-3.0, 4.0) },
            f_star = |_| -1.913_222_954_981_036_7,
            x_star = |_| vec![-0.547_197_551_484_209_7, -1.547_197_539_309_708_2]),
        family!("Michalewicz", D2_5_10, NC, MM, f::michalewicz,
            bounds = |_, _| (0.0, PI), f_star = |n| MICHALEWICZ_F[..n].iter().sum(),
            x_star = |n| MICHALEWICZ_X[..n].to_vec()),
        family!("Perm4", D4, NC, MM, f::perm,
            bounds = |i, _| (-(i as f64), i as f64), f_star = zero,
            x_star = |n| (1..=n).map(|i| i as f64).collect()),
        family!("Pinter", D2_5_10, NC, MM, f::pinter,
            bounds = |_, _| (-5.5, 14.5), f_star = zero, x_star = zeros),
        family!("Powell", D4, C, MM, f::powell,
            bounds = |_, _| (-4.0, 5.0), f_star = zero, x_star = zeros),
        family!("Power_Sum", D4, C, MM, f::power_sum,
            bounds = |i, _| (1.0, 4.0 + 2f64.powf(1.0 / i as f64)), f_star = zero,
            x_star = |_| vec![1.0, 2.0, 2.0, 3.0]),
        family!("Qing", D2_5_10, NC, MM, f::qing,
            bounds = |_, _| (-500.0, 500.0), f_star = zero,
            x_star = |n| (1..=n).map(|i| (i as f64).sqrt()).collect()),
        family!("Rastrigin", D2_5_10, NC, MM, f::rastrigin,
            bounds = |i, _| { let r = 2f64.powf(1.0 / i as f64); (-5.0 * r, 7.0 + r) },
            f_star = zero, x_star = zeros),
        family!("Rosenbrock", D2_5_10, NC, UM, f::rosenbrock,
            bounds = |i, _| (-5.0 / (i as f64).sqrt(), 10.0 * (i as f64).sqrt()),
            f_star = zero, x_star = ones),
        family!("Rotated_H_Ellip", D2_5_10, C, UM, f::rotated_hyper_ellipsoid,
            bounds = |_, _| (-35.0, 96.0), f_star = zero, x_star = zeros),
        family!("Schwefel", D2_5_10, NC, MM, f::schwefel,
            bounds = |i, _| {
                let s = (i as f64).sqrt();
                (-500.0 + 100.0 / s, 500.0 - 40.0 / s)
            },
            f_star = zero, x_star = |n| vec![420.968_746_359_982_03; n]),
        family!("Shekel5", D4, NC, MM, f::shekel5,
            bounds = |_, _| (0.0, 10.0), f_star = |_| -10.153_199_679_058_229,
            x_star = |_| vec![4.000_037_152_376_549, 4.000_133_278_657_566, 4.000_037_151_057_555, 4.000_133_277_090_425]),
        family!("Shekel7", D4, NC, MM, f::shekel7,
            bounds = |_, _| (0.0, 10.0), f_star = |_| -10.402_940_566_818_662,
            x_star = |_| vec![4.000_572_914_277_084, 4.000_689_366_040_889, 3.999_489_710_793_844_7, 3.999_606_160_006_792_3]),
        family!("Shekel10", D4, NC, MM, f::shekel10,
            bounds = |_, _| (0.0, 10.0), f_star = |_| -10.536_409_816_692_045,
            x_star = |_| vec![4.000_746_530_253_313, 4.000_592_936_779_709, 3.999_663_395_771_478_7, 3.999_509_799_329_997_5]),
        family!("Shubert", D2, NC, MM, f::shubert,
            bounds = |_, _| (-10.0, 10.0), f_star = |_| -186.730_908_831_023_92,
            x_star = |_| vec![-7.083_506_409_397_382, 4.858_056_877_022_195]),
        family!("Sphere", D2_5_10, C, UM, f::sphere,
            bounds = |_, _| (-2.75, 7.25), f_star = zero, x_star = zeros),
        family!("Styblinski_Tang", D2_5_10, NC, MM, f::styblinski_tang,
            bounds = |i, _| (-5.0, 5.0 + 3f64.powf(1.0 / i as f64)),
            f_star = |n| STYBLINSKI_F * n as f64, x_star = |n| vec![STYBLINSKI_X; n]),
        family!("Sum_of_Powers", D2_5_10, C, UM, f::sum_of_powers,
            bounds = |_, _| (-0.55, 1.45), f_star = zero, x_star = zeros),
        family!("Sum_Square", D2_5_10, C, UM, f::sum_square,
            bounds = |_, _| (-5.5, 14.5), f_star = zero, x_star = zeros),
        family!("Trefethen", D2, NC, MM, f::trefethen,
            bounds = |_, _| (-2.0, 2.0), f_star = |_| -3.306_868_647_475_240_7,
            x_star = |_| vec![-0.024_403_079_651_335_195, 0.210_612_427_227_114_37]),
        family!("Trid", D2_5_10, C, MM, f::trid,
            bounds = |_, _| (-100.0, 100.0),
            f_star = |n| { let n = n as f64; -n * (n + 4.0) * (n - 1.0) / 6.0 },
            x_star = |n| (1..=n).map(|i| (i * (n + 1 - i)) as f64).collect()),
        family!("Vincent", D2_5_10, NC, MM, f::vincent,
            bounds = |_, _| (0.25, 10.0), f_star = |n| -(n as f64),
            x_star = |n| vec![(PI / 20.0).exp(); n]),
        family!("Zakharov", D2_5_10, C, MM, f::zakharov,
            bounds = |_, _| (-1.625, 13.375), f_star = zero, x_star = zeros),
    ];
    FAMILIES
}

/// Every catalog instance, in family then dimension order.
pub fn catalog() -> Vec<ProblemSpec> {
    families()
        .iter()
        .flat_map(|fam| fam.dims.iter().map(move |&n| fam.spec(n).expect("listed dimension")))
        .collect()
}

/// Family by case-insensitive name.
pub fn family(name: &str) -> Option<&'static Family> {
    families().iter().find(|f| f.name.eq_ignore_ascii_case(name))
}

/// Instantiates catalog entry `(name, n)`; the name is case-insensitive.
pub fn lookup(name: &str, n: usize) -> Result<Problem> {
    family(name)
        .ok_or_else(|| Error::NotFound {
            name: name.to_string(),
            n,
        })?
        .spec(n)?
        .instantiate()
}

/// Objective value at an original-space point, with non-finite results
/// mapped to `+inf`.
pub fn eval_raw(problem: &Problem, x: &[f64]) -> f64 {
    let f = problem.eval(x);
    if f.is_finite() {
        f
    } else {
        f64::INFINITY
    }
}

/// Domain-shift parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbConfig {
    pub rho: f64,
}

impl PerturbConfig {
    pub fn new(rho: f64) -> Result<Self> {
        if !(rho >= 0.0) || !rho.is_finite() {
            return Err(Error::InvalidArgument(format!("rho must be >= 0, got {rho}")));
        }
        Ok(Self { rho })
    }
}

/// Shifts every bound up by `rho` times the side length, clamping the new
/// lower bound so the known minimizer stays inside.
pub fn perturb(problem: &Problem, rho: f64) -> Result<Problem> {
    let rho = PerturbConfig::new(rho)?.rho;
    let x_star = problem.x_star.as_ref().ok_or_else(|| {
        Error::Unsupported(format!("`{}` has no known minimizer to perturb around", problem.name))
    })?;
    let mut lower = Vec::with_capacity(problem.dim());
    let mut upper = Vec::with_capacity(problem.dim());
    for ((&a, &b), &xs) in problem.lower.iter().zip(&problem.upper).zip(x_star) {
        let d = (b - a).abs();
        lower.push((a + rho * d).min(xs));
        upper.push(b + rho * d);
    }
    Ok(problem.clone().with_bounds(lower, upper))
}

/// `|f(x*) - f*|`, or a catalog-defect error if it exceeds
/// `1e-6 * max(1, |f*|)`.
pub fn verify_optimum(problem: &Problem) -> Result<f64> {
    let x_star = problem.x_star.as_ref().ok_or_else(|| {
        Error::Unsupported(format!("`{}` has no known minimizer", problem.name))
    })?;
    let residual = (eval_raw(problem, x_star) - problem.f_star).abs();
    if residual <= 1e-6 * problem.f_star.abs().max(1.0) {
        Ok(residual)
    } else {
        Err(Error::CatalogDefect {
            name: problem.name.clone(),
            n: problem.dim(),
            residual,
        })
    }
}
