//! Least-squares polynomial fits, R², degree selection and dependence verdicts.
//!
//! Fits are solved by Householder QR on a centred and scaled abscissa
//! `t = (x - mean) / sd`, then expanded back to ascending powers of raw `x`.
//! Raw Vandermonde columns on grids like `10..100` are too ill-conditioned
//! for degree 4+ to solve directly.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::format::format_sig;
use crate::stats;

pub const MAX_DEGREE: usize = 6;

/// Adjusted-R² window within which the smallest degree wins.
pub const PARSIMONY_WINDOW: f64 = 0.005;

/// Minimum R² of the selected fit for a [`Verdict::Dependent`] verdict.
pub const DEPENDENCE_THRESHOLD: f64 = 0.8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("xs and ys differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("degree {0} outside 1..={MAX_DEGREE}")]
    BadDegree(usize),
    #[error("{points} points cannot determine a degree {degree} fit")]
    TooFewPoints { points: usize, degree: usize },
    #[error("duplicate x value {0}")]
    DuplicateX(f64),
    #[error("non-finite input value")]
    NonFinite,
    #[error("zero variance in ys")]
    ZeroVariance,
    #[error("design matrix is numerically singular")]
    Singular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyFit {
    pub degree: usize,
    /// Ascending powers of raw `x`: `c0 + c1 x + ... + cd x^d`.
    pub coefficients: Vec<f64>,
    pub r_squared: f64,
    pub ss_res: f64,
    pub ss_tot: f64,
    pub n_points: usize,
}

impl PolyFit {
    /// Horner evaluation of the fitted polynomial.
    pub fn predict(&self, x: f64) -> f64 {
        predict(&self.coefficients, x)
    }

    /// `1 - (1 - R²)(n - 1)/(n - d - 1)`; undefined (NaN) when `n <= d + 1`.
    pub fn adjusted_r_squared(&self) -> f64 {
        adjusted_r_squared(self.r_squared, self.n_points, self.degree)
    }
}

pub fn adjusted_r_squared(r_squared: f64, n: usize, degree: usize) -> f64 {
    if n <= degree + 1 {
        return f64::NAN;
    }
    1.0 - (1.0 - r_squared) * (n - 1) as f64 / (n - degree - 1) as f64
}

/// Horner evaluation of ascending-power coefficients.
pub fn predict(coefficients: &[f64], x: f64) -> f64 {
    coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn validate(xs: &[f64], ys: &[f64]) -> Result<(), FitError> {
    if xs.len() != ys.len() {
        return Err(FitError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(FitError::NonFinite);
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(FitError::DuplicateX(w[0]));
    }
    Ok(())
}

/// Least-squares solve of `a x = b` by Householder QR. `a` is row-major
/// `rows x cols` with `rows >= cols`.
fn qr_least_squares(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>, FitError> {
    let rows = a.len();
    let cols = a[0].len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    for k in 0..cols {
        let norm = (k..rows).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm <= 1e-13 * scale {
            return Err(FitError::Singular);
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..rows).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // column j of the trailing block; rows are indexed through v
        #[allow(clippy::needless_range_loop)]
        for j in k..cols {
            let dot: f64 = v.iter().enumerate().map(|(i, vi)| vi * a[k + i][j]).sum();
            let f = 2.0 * dot / vnorm2;
            for (i, vi) in v.iter().enumerate() {
                a[k + i][j] -= f * vi;
            }
        }
        let dot: f64 = v.iter().enumerate().map(|(i, vi)| vi * b[k + i]).sum();
        let f = 2.0 * dot / vnorm2;
        for (i, vi) in v.iter().enumerate() {
            b[k + i] -= f * vi;
        }
    }
    let mut x = vec![0.0; cols];
    for k in (0..cols).rev() {
        let s: f64 = ((k + 1)..cols).map(|j| a[k][j] * x[j]).sum();
        if a[k][k].abs() <= 1e-13 * scale {
            return Err(FitError::Singular);
        }
        x[k] = (b[k] - s) / a[k][k];
    }
    Ok(x)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Rewrites `sum a_j ((x - m)/s)^j` as ascending powers of `x`.
fn expand_scaled(a: &[f64], m: f64, s: f64) -> Vec<f64> {
    let mut c = vec![0.0; a.len()];
    for (j, &aj) in a.iter().enumerate() {
        let lead = aj / s.powi(j as i32);
        for (k, ck) in c.iter_mut().enumerate().take(j + 1) {
            *ck += lead * binomial(j, k) * (-m).powi((j - k) as i32);
        }
    }
    c
}

/// Ordinary least-squares polynomial of degree `degree`.
pub fn polyfit(xs: &[f64], ys: &[f64], degree: usize) -> Result<PolyFit, FitError> {
    if !(1..=MAX_DEGREE).contains(&degree) {
        return Err(FitError::BadDegree(degree));
    }
    validate(xs, ys)?;
    let n = xs.len();
    if n < degree + 1 {
        return Err(FitError::TooFewPoints { points: n, degree });
    }
    let y_mean = stats::mean(ys);
    let ss_tot: f64 = ys.iter().map(|y| (y - y_mean) * (y - y_mean)).sum();
    if ss_tot == 0.0 {
        return Err(FitError::ZeroVariance);
    }

    let m = stats::mean(xs);
    let s = stats::sample_sd(xs);
    let ts: Vec<f64> = xs.iter().map(|x| (x - m) / s).collect();
    let design: Vec<Vec<f64>> = ts
        .iter()
        .map(|&t| (0..=degree).map(|j| t.powi(j as i32)).collect())
        .collect();
    let scaled = qr_least_squares(design, ys.to_vec())?;

    let ss_res: f64 = ts
        .iter()
        .zip(ys)
        .map(|(&t, y)| {
            let r = y - predict(&scaled, t);
            r * r
        })
        .sum();
    let r_squared = (1.0 - ss_res / ss_tot).clamp(0.0, 1.0);

    Ok(PolyFit {
        degree,
        coefficients: expand_scaled(&scaled, m, s),
        r_squared,
        ss_res,
        ss_tot,
        n_points: n,
    })
}

/// Fits degrees `1..=min(max_degree, n - 2)` and returns the smallest degree
/// whose adjusted R² is within [`PARSIMONY_WINDOW`] of the best.
pub fn select_degree(xs: &[f64], ys: &[f64], max_degree: usize) -> Result<(usize, PolyFit), FitError> {
    validate(xs, ys)?;
    let n = xs.len();
    let top = max_degree.min(MAX_DEGREE).min(n.saturating_sub(2));
    if top < 1 {
        return Err(FitError::TooFewPoints { points: n, degree: 1 });
    }
    let fits = (1..=top).map(|d| polyfit(xs, ys, d)).collect::<Result<Vec<_>, _>>()?;
    let best = fits
        .iter()
        .map(PolyFit::adjusted_r_squared)
        .fold(f64::NEG_INFINITY, f64::max);
    let chosen = fits
        .into_iter()
        .find(|f| f.adjusted_r_squared() >= best - PARSIMONY_WINDOW)
        .expect("the best fit is within its own window");
    Ok((chosen.degree, chosen))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    /// The selected polynomial explains at least [`DEPENDENCE_THRESHOLD`] of the variance.
    Dependent { degree: usize, r_squared: f64 },
    /// No usable trend. `r_squared` is the selected fit's R², absent for constant ys.
    Flat { r_squared: Option<f64> },
}

impl Verdict {
    pub fn is_flat(&self) -> bool {
        matches!(self, Verdict::Flat { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Dependent { degree, r_squared } => {
                write!(f, "dependent degree={degree} r_squared={}", format_sig(*r_squared, 6))
            }
            Verdict::Flat { r_squared: Some(r2) } => write!(f, "flat r_squared={}", format_sig(*r2, 6)),
            Verdict::Flat { r_squared: None } => write!(f, "flat (constant ys)"),
        }
    }
}

/// Whether `ys` depends on `xs`: the selected fit's R² against
/// [`DEPENDENCE_THRESHOLD`]. Constant `ys` are immediately flat.
pub fn dependence_verdict(xs: &[f64], ys: &[f64], max_degree: usize) -> Result<Verdict, FitError> {
    match select_degree(xs, ys, max_degree) {
        Ok((degree, fit)) if fit.r_squared >= DEPENDENCE_THRESHOLD => Ok(Verdict::Dependent {
            degree,
            r_squared: fit.r_squared,
        }),
        Ok((_, fit)) => Ok(Verdict::Flat {
            r_squared: Some(fit.r_squared),
        }),
        Err(FitError::ZeroVariance) => Ok(Verdict::Flat { r_squared: None }),
        Err(e) => Err(e),
    }
}

/// A persisted fit: the polynomial, if one exists, plus an optional verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub fit: Option<PolyFit>,
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("fit report line {line}: {message}")]
pub struct ReportParseError {
    pub line: usize,
    pub message: String,
}

impl FitReport {
    /// `key: value` text, one field per line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# polynomial fit report (coefficients: ascending powers of raw x)\n");
        if let Some(fit) = &self.fit {
            let coeffs: Vec<String> = fit.coefficients.iter().map(|c| format_sig(*c, 12)).collect();
            let _ = writeln!(out, "degree: {}", fit.degree);
            let _ = writeln!(out, "coefficients: {}", coeffs.join(" "));
            let _ = writeln!(out, "r_squared: {}", format_sig(fit.r_squared, 12));
            let _ = writeln!(out, "adjusted_r_squared: {}", format_sig(fit.adjusted_r_squared(), 12));
            let _ = writeln!(out, "ss_res: {}", format_sig(fit.ss_res, 12));
            let _ = writeln!(out, "ss_tot: {}", format_sig(fit.ss_tot, 12));
            let _ = writeln!(out, "n_points: {}", fit.n_points);
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        out
    }

    /// One header row and one data row; coefficients as `c0..cd` columns.
    pub fn to_csv(&self) -> String {
        let verdict = self.verdict.map(|v| v.to_string()).unwrap_or_default();
        match &self.fit {
            Some(fit) => {
                let cols: Vec<String> = (0..=fit.degree).map(|i| format!("c{i}")).collect();
                let coeffs: Vec<String> = fit.coefficients.iter().map(|c| format_sig(*c, 12)).collect();
                format!(
                    "degree,r_squared,adjusted_r_squared,ss_res,ss_tot,n_points,verdict,{}\n{},{},{},{},{},{},{},{}\n",
                    cols.join(","),
                    fit.degree,
                    format_sig(fit.r_squared, 12),
                    format_sig(fit.adjusted_r_squared(), 12),
                    format_sig(fit.ss_res, 12),
                    format_sig(fit.ss_tot, 12),
                    fit.n_points,
                    verdict,
                    coeffs.join(",")
                )
            }
            None => format!("degree,r_squared,adjusted_r_squared,ss_res,ss_tot,n_points,verdict\n,,,,,,{verdict}\n"),
        }
    }

    /// Parses the output of [`FitReport::to_text`]. The verdict line is kept
    /// only as far as needed to rebuild the polynomial, so it is not restored.
    pub fn parse_text(text: &str) -> Result<FitReport, ReportParseError> {
        let mut degree = None;
        let mut coefficients = None;
        let mut fields = std::collections::HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| ReportParseError { line: idx + 1, message };
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| err("expected `key: value`".into()))?;
            let value = value.trim();
            match key.trim() {
                "degree" => degree = Some(value.parse::<usize>().map_err(|e| err(e.to_string()))?),
                "coefficients" => {
                    coefficients = Some(
                        value
                            .split_whitespace()
                            .map(str::parse::<f64>)
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| err(e.to_string()))?,
                    )
                }
                "verdict" => {}
                k @ ("r_squared" | "adjusted_r_squared" | "ss_res" | "ss_tot" | "n_points") => {
                    let v: f64 = value.parse().map_err(|_| err(format!("bad number `{value}`")))?;
                    fields.insert(k.to_string(), v);
                }
                other => return Err(err(format!("unknown field `{other}`"))),
            }
        }
        let fit = match (degree, coefficients) {
            (Some(degree), Some(coefficients)) => {
                if coefficients.len() != degree + 1 {
                    return Err(ReportParseError {
                        line: 0,
                        message: format!("degree {degree} needs {} coefficients", degree + 1),
                    });
                }
                let get = |k: &str| fields.get(k).copied().unwrap_or(f64::NAN);
                Some(PolyFit {
                    degree,
                    coefficients,
                    r_squared: get("r_squared"),
                    ss_res: get("ss_res"),
                    ss_tot: get("ss_tot"),
                    n_points: get("n_points") as usize,
                })
            }
            (None, None) => None,
            _ => {
                return Err(ReportParseError {
                    line: 0,
                    message: "degree and coefficients must appear together".into(),
                })
            }
        };
        Ok(FitReport { fit, verdict: None })
    }

    /// Parses the output of [`FitReport::to_csv`]; the verdict is not restored.
    pub fn parse_csv(text: &str) -> Result<FitReport, ReportParseError> {
        let err = |line: usize, message: String| ReportParseError { line, message };
        let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(text.as_bytes());
        let header = reader.headers().map_err(|e| err(1, e.to_string()))?.clone();
        let record = match reader.records().next() {
            Some(r) => r.map_err(|e| err(2, e.to_string()))?,
            None => return Err(err(2, "missing data row".into())),
        };
        let field = |name: &str| {
            header
                .iter()
                .position(|h| h == name)
                .and_then(|i| record.get(i))
                .unwrap_or("")
        };
        if field("degree").is_empty() {
            return Ok(FitReport {
                fit: None,
                verdict: None,
            });
        }
        let num = |name: &str| -> Result<f64, ReportParseError> {
            let v = field(name);
            v.parse().map_err(|_| err(2, format!("{name}: bad number `{v}`")))
        };
        let degree: usize = field("degree").parse().map_err(|_| err(2, "bad degree".into()))?;
        let coefficients = (0..=degree)
            .map(|i| num(&format!("c{i}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FitReport {
            fit: Some(PolyFit {
                degree,
                coefficients,
                r_squared: num("r_squared")?,
                ss_res: num("ss_res")?,
                ss_tot: num("ss_tot")?,
                n_points: num("n_points")? as usize,
            }),
            verdict: None,
        })
    }

    /// Text or CSV, told apart by the CSV header.
    pub fn parse(text: &str) -> Result<FitReport, ReportParseError> {
        if text.starts_with("degree,") {
            FitReport::parse_csv(text)
        } else {
            FitReport::parse_text(text)
        }
    }
}
