use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde_json::Value;
use thiserror::Error;

use super::specfile::Check;
use crate::bounds::{
    check_power_expansion, check_power_vanishing, circle_bounds, height, projective_bounds,
    relative_height, Bound, BoundInterval, BoundSource, BoundsError, Enhancement, Side,
};
use crate::bundle::{build_projective_model, BundleSpec, ModelError, ProjectiveModel};
use crate::char_classes::{dual_total_sw, ClassError};
use crate::ring::Element;
use crate::verification::{exhaustive_kernel_degree1, relative_height_bruteforce, OracleError};

pub const DEFAULT_MAX_DIM: u32 = 64;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("total space of the product bundle has dimension {dim}, above the limit {cap}")]
    DimensionCap { dim: u32, cap: u32 },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl RunError {
    /// 1 for inputs the engine refuses, 2 for violated invariants.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::DimensionCap { .. } => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub checks: Vec<Check>,
    pub max_dim: u32,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            checks: Vec::new(),
            max_dim: DEFAULT_MAX_DIM,
        }
    }
}

impl RunOptions {
    /// Every check applicable at `rank`.
    pub fn all_checks(rank: u32) -> Vec<Check> {
        Check::ALL
            .into_iter()
            .filter(|c| rank >= c.min_rank())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Heights {
    pub v_l: u32,
    pub v_r: u32,
    pub v_sum: u32,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub rank: u32,
    pub base_dim: u32,
    pub fiber_dim: u32,
    pub closed_manifold: bool,
    pub generators: Vec<String>,
    pub base_betti: Vec<usize>,
    pub e2b_betti: Option<Vec<usize>>,
    pub total_sw: String,
    pub dual_sw: String,
    pub dual_top_degree: u32,
    pub heights: Option<Heights>,
    pub bounds: Vec<Bound>,
    pub interval: BoundInterval,
    pub checks: Vec<CheckOutcome>,
    pub elapsed: Duration,
}

impl Report {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks
            .iter()
            .filter(|c| matches!(c.status, CheckStatus::Failed(_)))
    }

    /// Flat key/value view; the JSON output and `[expect]` keys use it.
    pub fn flat(&self) -> BTreeMap<String, Value> {
        let mut map = BTreeMap::new();
        let mut put = |k: &str, v: Value| {
            map.insert(k.to_string(), v);
        };
        put("rank", self.rank.into());
        put("base_dim", self.base_dim.into());
        put("fiber_dim", self.fiber_dim.into());
        put("closed_manifold", self.closed_manifold.into());
        put("lower", self.interval.lower().into());
        put(
            "upper",
            self.interval
                .upper()
                .map_or(Value::from("unbounded"), Value::from),
        );
        put("exact", self.interval.is_exact().into());
        put("lower_source", self.interval.lower_source().tag().into());
        put(
            "upper_source",
            self.interval
                .upper_source()
                .map_or(Value::Null, |s| s.tag().into()),
        );
        put("sw.total", self.total_sw.clone().into());
        put("dual_sw.total", self.dual_sw.clone().into());
        put("dual_sw.m", self.dual_top_degree.into());
        put("betti.base", betti_string(&self.base_betti).into());
        if let Some(b) = &self.e2b_betti {
            put("betti.e2b", betti_string(b).into());
        }
        if let Some(h) = self.heights {
            put("heights.v_l", h.v_l.into());
            put("heights.v_r", h.v_r.into());
            put("heights.v_sum", h.v_sum.into());
        }
        for b in &self.bounds {
            let side = match b.side {
                Side::Lower => "lower",
                Side::Upper => "upper",
            };
            put(&format!("bounds.{side}.{}", b.source.tag()), b.value.into());
        }
        for c in &self.checks {
            let v = match &c.status {
                CheckStatus::Passed => "pass",
                CheckStatus::Failed(_) => "fail",
                CheckStatus::Skipped(_) => "skipped",
            };
            put(&format!("checks.{}", c.check.tag()), v.into());
        }
        map
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.flat()).expect("string keys")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "bundle: rank {} over a base of dimension {}{}, fibre RP^{}",
            self.rank,
            self.base_dim,
            if self.closed_manifold {
                " (closed manifold)"
            } else {
                ""
            },
            self.fiber_dim
        );
        let _ = writeln!(out, "base generators: {}", self.generators.join(", "));
        let _ = writeln!(
            out,
            "base betti numbers: {}",
            betti_string(&self.base_betti)
        );
        if let Some(b) = &self.e2b_betti {
            let _ = writeln!(out, "fibre-product betti numbers: {}", betti_string(b));
        }
        let _ = writeln!(out, "w = {}", self.total_sw);
        let _ = writeln!(
            out,
            "dual w = {}  (top degree {})",
            self.dual_sw, self.dual_top_degree
        );
        if let Some(h) = self.heights {
            let _ = writeln!(
                out,
                "heights: v_L {}, v_R {}, v_L + v_R {}",
                h.v_l, h.v_r, h.v_sum
            );
        }
        let _ = writeln!(out, "bounds:");
        for b in &self.bounds {
            let op = match b.side {
                Side::Lower => ">=",
                Side::Upper => "<=",
            };
            let _ = writeln!(out, "  TC {op} {:<3} {}", b.value, b.source);
        }
        let _ = writeln!(
            out,
            "TC interval: {}{}",
            self.interval,
            if self.interval.is_exact() {
                "  exact"
            } else {
                ""
            }
        );
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let status = match &c.status {
                    CheckStatus::Passed => "pass".to_string(),
                    CheckStatus::Failed(why) => format!("FAIL ({why})"),
                    CheckStatus::Skipped(why) => format!("skipped ({why})"),
                };
                let _ = writeln!(out, "  {:<24} {status}", c.check.tag());
            }
        }
        let _ = writeln!(out, "elapsed: {:.3} ms", self.elapsed.as_secs_f64() * 1e3);
        out
    }
}

fn betti_string(b: &[usize]) -> String {
    b.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(spec: &BundleSpec, options: &RunOptions) -> Result<Report, RunError> {
    let start = Instant::now();
    let n = spec.base_dim();
    let d = spec.fiber_dim();
    let dim = n + 2 * d;
    if dim > options.max_dim {
        return Err(RunError::DimensionCap {
            dim,
            cap: options.max_dim,
        });
    }
    let base = spec.base();
    let dual = dual_total_sw(base, spec.total_sw())?;

    let model = if spec.rank() >= 2 {
        Some(build_projective_model(spec)?)
    } else {
        None
    };

    let (bounds, heights) = match &model {
        None => (
            vec![
                Bound::lower(0, BoundSource::PointFiber),
                Bound::upper(0, BoundSource::PointFiber),
            ],
            None,
        ),
        Some(m) => {
            let ring = m.e2b_ring();
            let heights = Heights {
                v_l: height(ring, m.v_l())?,
                v_r: height(ring, m.v_r())?,
                v_sum: height(ring, m.kernel_class())?,
            };
            let bounds = if spec.rank() == 2 {
                circle_bounds(spec)?
            } else {
                projective_bounds(m, spec)?
            };
            (bounds, Some(heights))
        }
    };
    let interval = BoundInterval::from_bounds(&bounds)?;

    let mut checks = Vec::new();
    for &check in &options.checks {
        let status = run_check(check, spec, model.as_ref())?;
        checks.push(CheckOutcome { check, status });
    }

    Ok(Report {
        rank: spec.rank(),
        base_dim: n,
        fiber_dim: d,
        closed_manifold: spec.closed_manifold(),
        generators: base
            .generators()
            .iter()
            .map(|g| {
                let rhs = if g.rewrite_rhs.is_zero() {
                    "0".to_string()
                } else {
                    base.render(&g.rewrite_rhs)
                };
                format!(
                    "{} (deg {}, {}^{} = {rhs})",
                    g.name, g.degree, g.name, g.rewrite_exponent
                )
            })
            .collect(),
        base_betti: base.betti_numbers(),
        e2b_betti: model.as_ref().map(|m| m.e2b_ring().betti_numbers()),
        total_sw: base.render(spec.total_sw().value()),
        dual_sw: base.render(dual.value()),
        dual_top_degree: dual.top_degree(),
        heights,
        bounds,
        interval,
        checks,
        elapsed: start.elapsed(),
    })
}

fn verdict(ok: bool, why: impl FnOnce() -> String) -> CheckStatus {
    if ok {
        CheckStatus::Passed
    } else {
        CheckStatus::Failed(why())
    }
}

fn skip_on_cap<T>(r: Result<T, OracleError>) -> Result<Result<T, CheckStatus>, RunError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(OracleError::CapExceeded { dim, cap }) => Ok(Err(CheckStatus::Skipped(format!(
            "dimension {dim} above oracle cap {cap}"
        )))),
        Err(e) => Err(e.into()),
    }
}

fn run_check(
    check: Check,
    spec: &BundleSpec,
    model: Option<&ProjectiveModel>,
) -> Result<CheckStatus, RunError> {
    if spec.rank() < check.min_rank() {
        return Ok(CheckStatus::Skipped(format!(
            "needs rank at least {}",
            check.min_rank()
        )));
    }
    let base = spec.base();
    let n = spec.base_dim();
    let d = spec.fiber_dim();
    Ok(match (check, model) {
        (Check::DualInversion, _) => {
            let dual = dual_total_sw(base, spec.total_sw())?;
            let product = base.mul(spec.total_sw().value(), dual.value());
            verdict(product == Element::one(), || {
                format!("w * dual w = {}", base.render(&product))
            })
        }
        (_, None) => unreachable!("rank checked above"),
        (Check::PowerVanishing, Some(m)) => verdict(check_power_vanishing(m, spec)?, || {
            format!("(v_L + v_R)^{} is nonzero", n + 2 * d)
        }),
        (Check::PowerExpansion, Some(m)) => {
            let mut failure = None;
            'outer: for which in [Enhancement::Left, Enhancement::Right] {
                for i in 1..=n + d {
                    if !check_power_expansion(m, spec, which, i)? {
                        failure = Some(format!("{which:?} enhancement, index {i}"));
                        break 'outer;
                    }
                }
            }
            match failure {
                None => CheckStatus::Passed,
                Some(why) => CheckStatus::Failed(why),
            }
        }
        (Check::Kernel, Some(m)) => match skip_on_cap(exhaustive_kernel_degree1(m))? {
            Err(skip) => skip,
            Ok(found) => {
                let expected = vec![m.kernel_class().clone()];
                verdict(found == expected, || {
                    format!("degree-1 kernel has {} nonzero classes", found.len())
                })
            }
        },
        (Check::RelativeHeightOracle, Some(_)) => {
            let w1 = spec.orientation_class();
            let w2 = spec.total_sw().component(base, 2);
            if w1.is_zero() {
                CheckStatus::Skipped("w_1 vanishes".into())
            } else {
                let fast = relative_height(base, &w1, &w2)?;
                match skip_on_cap(relative_height_bruteforce(base, &w1, &w2))? {
                    Err(skip) => skip,
                    Ok(slow) => verdict(fast == slow, || {
                        format!("echelon gives {fast:?}, enumeration gives {slow:?}")
                    }),
                }
            }
        }
        (Check::SwapSymmetry, Some(m)) => {
            let ring = m.e2b_ring();
            let mut ok = true;
            let mut lp = Element::one();
            let mut rp = Element::one();
            for _ in 0..=ring.top_dimension() {
                ok &= m.swap(&lp) == rp && m.swap(&rp) == lp;
                lp = ring.mul(&lp, m.v_l());
                rp = ring.mul(&rp, m.v_r());
            }
            ok &= m.swap(m.kernel_class()) == *m.kernel_class();
            verdict(ok, || {
                "swap does not exchange the enhancement powers".into()
            })
        }
    })
}
