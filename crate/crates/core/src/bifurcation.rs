//! Paths of surface spectra `t ↦ {λ_ℓ(t)}` and the instants where some
//! `Θ_{0,ℓ}(t)` crosses the Jacobi threshold.
//!
//! Each track is a breakpoint table with linear interpolation on `[0, 1]`.
//! Tracks are independent curves and may cross each other; `λ_0 ≡ 0` is
//! implicit. A crossing from above to below the threshold raises the Morse
//! index by one, the reverse lowers it.
//!
//! Path files are comma-separated with header `t,lambda_1,lambda_2,...`,
//! one breakpoint per row, and optional `# n: 5`, `# k: 1`, `# gamma: 1`
//! metadata lines.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::morse::{default_null_tol, jacobi_threshold, morse_index_nullity, theta_zero};
use crate::specfun::ln_gamma_real;
use crate::spectrum::{metadata, read_table, SurfaceSpectrum};
use crate::symbol::SpectralParams;

pub const DEFAULT_SCAN_RESOLUTION: usize = 1024;
pub const DEFAULT_REFINE_TOL: f64 = 1e-10;
/// Samples closer than this (relative to the threshold) without a sign
/// change are reported as tangential contacts.
pub const TANGENCY_REL: f64 = 1e-6;

/// One eigenvalue curve `λ_ℓ(t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Track {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl Track {
    /// Breakpoints must start at `t = 0`, end at `t = 1` and increase strictly.
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() || times.len() < 2 {
            return Err(Error::InvalidPath("a track needs at least two breakpoints".into()));
        }
        if times[0] != 0.0 || *times.last().unwrap() != 1.0 {
            return Err(Error::InvalidPath(format!(
                "breakpoints must span [0, 1], got [{}, {}]",
                times[0],
                times.last().unwrap()
            )));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidPath("breakpoint times must increase strictly".into()));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::InvalidPath(format!("track values must be positive and finite, got {v}")));
        }
        Ok(Self { times, values })
    }

    pub fn constant(value: f64) -> Result<Self> {
        Self::new(vec![0.0, 1.0], vec![value, value])
    }

    pub fn linear(start: f64, end: f64) -> Result<Self> {
        Self::new(vec![0.0, 1.0], vec![start, end])
    }

    pub fn value_at(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        let i = self.times.partition_point(|&s| s <= t).clamp(1, self.times.len() - 1);
        let (t0, t1) = (self.times[i - 1], self.times[i]);
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        let w = (t - t0) / (t1 - t0);
        (1.0 - w) * v0 + w * v1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathKind {
    PiecewiseLinear,
    PinchingFamily,
    UserSampled,
}

/// Parameter defaults carried in a path file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct PathMetadata {
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralPath {
    pub kind: PathKind,
    tracks: Vec<Track>,
    pub metadata: PathMetadata,
}

impl SpectralPath {
    pub fn new(kind: PathKind, tracks: Vec<Track>) -> Result<Self> {
        if tracks.is_empty() {
            return Err(Error::InvalidPath("a path needs at least one track".into()));
        }
        Ok(Self { kind, tracks, metadata: PathMetadata::default() })
    }

    pub fn tracks(&self) -> &[Track] {
        &self.tracks
    }

    /// `λ_1(t), ..., λ_L(t)` in track order.
    pub fn values_at(&self, t: f64) -> Vec<f64> {
        self.tracks.iter().map(|tr| tr.value_at(t)).collect()
    }

    /// The sorted spectrum `0, λ_(1)(t), ...` at time `t`.
    pub fn spectrum_at(&self, t: f64) -> Result<SurfaceSpectrum> {
        let mut values = self.values_at(t);
        values.sort_by(f64::total_cmp);
        values.insert(0, 0.0);
        SurfaceSpectrum::new(values, None, None)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut meta = PathMetadata::default();
        for (line_no, line) in text.lines().enumerate() {
            if let Some((key, value)) = metadata(line) {
                let err = |m: String| Error::Parse { line: line_no + 1, message: m };
                match key {
                    "n" => meta.n = Some(value.parse().map_err(|e| err(format!("n: {e}")))?),
                    "k" => meta.k = Some(value.parse().map_err(|e| err(format!("k: {e}")))?),
                    "gamma" => meta.gamma = Some(value.parse().map_err(|e| err(format!("gamma: {e}")))?),
                    _ => {}
                }
            }
        }
        let (header, rows) = read_table(text)?;
        if header.first().map(String::as_str) != Some("t") || header.len() < 2 {
            return Err(Error::Parse { line: 1, message: "header must be `t,lambda_1,...`".into() });
        }
        for (i, name) in header.iter().enumerate().skip(1) {
            if *name != format!("lambda_{i}") {
                return Err(Error::Parse { line: 1, message: format!("column {} must be `lambda_{i}`, got `{name}`", i + 1) });
            }
        }
        let times: Vec<f64> = rows.iter().map(|(_, r)| r[0]).collect();
        let tracks = (1..header.len())
            .map(|c| Track::new(times.clone(), rows.iter().map(|(_, r)| r[c]).collect()))
            .collect::<Result<Vec<_>>>()?;
        let mut path = Self::new(PathKind::UserSampled, tracks)?;
        path.metadata = meta;
        Ok(path)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Writes the path on the union of all breakpoints.
    pub fn to_text(&self) -> String {
        let mut times: Vec<f64> = self.tracks.iter().flat_map(|t| t.times.iter().copied()).collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        let mut out = String::new();
        if let Some(n) = self.metadata.n {
            let _ = writeln!(out, "# n: {n}");
        }
        if let Some(k) = self.metadata.k {
            let _ = writeln!(out, "# k: {k}");
        }
        if let Some(g) = self.metadata.gamma {
            let _ = writeln!(out, "# gamma: {g:e}");
        }
        out.push('t');
        for i in 1..=self.tracks.len() {
            let _ = write!(out, ",lambda_{i}");
        }
        out.push('\n');
        for t in times {
            let _ = write!(out, "{t:e}");
            for v in self.values_at(t) {
                let _ = write!(out, ",{v:e}");
            }
            out.push('\n');
        }
        out
    }
}

/// Pinching family: the first `pinched` tracks of `base` descend linearly to
/// distinct values in `(1/4, lambda_end]` (track `j` ends at
/// `1/4 + (lambda_end − 1/4)(J − j + 1)/J`); the others stay constant.
pub fn pinching_family(pinched: usize, lambda_end: f64, base: &SurfaceSpectrum) -> Result<SpectralPath> {
    if pinched == 0 {
        return Err(Error::Domain("at least one track must be pinched".into()));
    }
    if !(lambda_end > 0.25 && lambda_end.is_finite()) {
        return Err(Error::Domain(format!("lambda_end must exceed 1/4, got {lambda_end}")));
    }
    let eig = &base.eigenvalues()[1..];
    if pinched > eig.len() {
        return Err(Error::Domain(format!("cannot pinch {pinched} tracks of a spectrum with {} nonzero eigenvalues", eig.len())));
    }
    let span = lambda_end - 0.25;
    let tracks = eig
        .iter()
        .enumerate()
        .map(|(i, &start)| {
            if i < pinched {
                let end = 0.25 + span * (pinched - i) as f64 / pinched as f64;
                if !(start > end) {
                    return Err(Error::Domain(format!("track {} starts at {start}, not above its end value {end}", i + 1)));
                }
                Track::linear(start, end)
            } else {
                Track::constant(start)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SpectralPath::new(PathKind::PinchingFamily, tracks)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectOptions {
    pub scan_resolution: usize,
    pub refine_tol: f64,
    /// Absolute nullity band; `None` means `1e-9 · threshold`.
    pub null_tol: Option<f64>,
}

impl Default for DetectOptions {
    fn default() -> Self {
        Self { scan_resolution: DEFAULT_SCAN_RESOLUTION, refine_tol: DEFAULT_REFINE_TOL, null_tol: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingDirection {
    /// Θ passes below the threshold; the index rises by one.
    Downward,
    /// Θ passes above the threshold; the index drops by one.
    Upward,
}

impl CrossingDirection {
    pub fn index_change(self) -> i64 {
        match self {
            CrossingDirection::Downward => 1,
            CrossingDirection::Upward => -1,
        }
    }
}

/// A degeneracy instant `t*` where `Θ_{0,ℓ}(t*)` equals the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Instant {
    pub t: f64,
    /// Track number `ℓ ≥ 1`.
    pub track: usize,
    pub direction: CrossingDirection,
    pub lambda: f64,
    pub theta: f64,
    /// `|Θ_{0,ℓ}(t*) − threshold|`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndexSegment {
    pub t_start: f64,
    pub t_end: f64,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Warning {
    /// The track touches the threshold without crossing it.
    Tangency { track: usize, t: f64, gap: f64 },
    /// The crossing-based profile disagrees with a direct index count,
    /// typically two crossings of one track inside a scan cell.
    ResolutionTooCoarse { t: f64, profile_index: i64, direct_index: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcationReport {
    pub threshold: f64,
    pub null_tol: f64,
    pub instants: Vec<Instant>,
    pub index_profile: Vec<IndexSegment>,
    pub index_start: usize,
    pub index_end: usize,
    /// Signed number of crossings, `index_end − index_start` when consistent.
    pub jump_total: i64,
    pub warnings: Vec<Warning>,
}

/// Scans every track for sign changes of `Θ_{0,ℓ}(t) − threshold`, refines
/// each by bisection in `t`, and rebuilds the Morse index profile.
pub fn detect_instants(path: &SpectralPath, params: &SpectralParams, options: &DetectOptions) -> Result<BifurcationReport> {
    if options.scan_resolution < 2 {
        return Err(Error::Domain(format!("scan resolution must be at least 2, got {}", options.scan_resolution)));
    }
    if !(options.refine_tol > 0.0) {
        return Err(Error::Domain(format!("refine tolerance must be positive, got {}", options.refine_tol)));
    }
    let threshold = jacobi_threshold(params)?;
    let null_tol = options.null_tol.unwrap_or_else(|| default_null_tol(threshold));
    let gap = |track: &Track, t: f64| theta_zero(track.value_at(t), params).map(|v| v - threshold);

    for t in [0.0, 1.0] {
        for (i, track) in path.tracks.iter().enumerate() {
            let g = gap(track, t)?;
            if g.abs() <= null_tol {
                return Err(Error::EndpointDegenerate { t, track: i + 1, gap: g.abs() });
            }
        }
    }

    let n = options.scan_resolution;
    let tangency_level = TANGENCY_REL * threshold;
    let mut instants = Vec::new();
    let mut warnings = Vec::new();
    for (i, track) in path.tracks.iter().enumerate() {
        let ell = i + 1;
        let samples = (0..=n)
            .map(|s| {
                let t = s as f64 / n as f64;
                gap(track, t).map(|g| (t, g))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut prev: Option<(f64, f64)> = None;
        let mut near_run: Option<(f64, f64)> = None;
        for (s, &(t, g)) in samples.iter().enumerate() {
            if g.abs() <= null_tol {
                if near_run.is_none_or(|(_, best)| g.abs() < best) {
                    near_run = Some((t, g.abs()));
                }
                continue;
            }
            if let Some((t_prev, g_prev)) = prev {
                if g_prev.signum() != g.signum() {
                    instants.push(refine(track, ell, t_prev, t, g_prev, params, threshold, options.refine_tol)?);
                } else if let Some((t_touch, gap)) = near_run {
                    warnings.push(Warning::Tangency { track: ell, t: t_touch, gap });
                } else if s >= 2 {
                    let (_, g_mid) = samples[s - 1];
                    let (_, g_before) = samples[s - 2];
                    let local_min = g_mid.abs() <= g.abs() && g_mid.abs() <= g_before.abs();
                    if local_min && g_mid.abs() <= tangency_level && g_before.signum() == g.signum() {
                        warnings.push(Warning::Tangency { track: ell, t: t_prev, gap: g_mid.abs() });
                    }
                }
            }
            near_run = None;
            prev = Some((t, g));
        }
    }
    instants.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.track.cmp(&b.track)));

    let direct_index = |t: f64| -> Result<usize> { Ok(morse_index_nullity(&path.spectrum_at(t)?, params, Some(null_tol))?.index) };
    let index_start = direct_index(0.0)?;
    let index_end = direct_index(1.0)?;
    let jump_total: i64 = instants.iter().map(|c| c.direction.index_change()).sum();

    let mut breaks: Vec<f64> = instants.iter().map(|c| c.t).collect();
    breaks.dedup();
    let mut bounds = Vec::with_capacity(breaks.len() + 2);
    bounds.push(0.0);
    bounds.extend(breaks.iter().copied());
    bounds.push(1.0);
    let mut index_profile = Vec::with_capacity(bounds.len() - 1);
    let mut running = index_start as i64;
    let mut next = 0;
    for w in bounds.windows(2) {
        let (t_start, t_end) = (w[0], w[1]);
        while next < instants.len() && instants[next].t <= t_start && t_start > 0.0 {
            running += instants[next].direction.index_change();
            next += 1;
        }
        let mid = 0.5 * (t_start + t_end);
        let direct = direct_index(mid)?;
        if running != direct as i64 {
            warnings.push(Warning::ResolutionTooCoarse { t: mid, profile_index: running, direct_index: direct });
        }
        index_profile.push(IndexSegment { t_start, t_end, index: running.max(0) as usize });
    }
    if index_start as i64 + jump_total != index_end as i64 {
        warnings.push(Warning::ResolutionTooCoarse {
            t: 1.0,
            profile_index: index_start as i64 + jump_total,
            direct_index: index_end,
        });
    }

    Ok(BifurcationReport { threshold, null_tol, instants, index_profile, index_start, index_end, jump_total, warnings })
}

#[allow(clippy::too_many_arguments)]
fn refine(
    track: &Track,
    ell: usize,
    mut lo: f64,
    mut hi: f64,
    g_lo: f64,
    params: &SpectralParams,
    threshold: f64,
    tol: f64,
) -> Result<Instant> {
    let sign_lo = g_lo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = theta_zero(track.value_at(mid), params)? - threshold;
        if g == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if g.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let lambda = track.value_at(t);
    let theta = theta_zero(lambda, params)?;
    let direction = if sign_lo > 0.0 { CrossingDirection::Downward } else { CrossingDirection::Upward };
    Ok(Instant { t, track: ell, direction, lambda, theta, residual: (theta - threshold).abs() })
}

/// `Θ_{0,ℓ}(t)` on a uniform grid of `samples + 1` times, for plotting.
pub fn theta_tracks(path: &SpectralPath, params: &SpectralParams, samples: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    params.require_spectral()?;
    let samples = samples.max(1);
    (0..=samples)
        .map(|s| {
            let t = s as f64 / samples as f64;
            let row = path.values_at(t).into_iter().map(|l| theta_zero(l, params)).collect::<Result<Vec<_>>>()?;
            Ok((t, row))
        })
        .collect()
}

/// Volume of `S^{n−2} × Σ²` with the product metric,
/// `8 π^{(n+1)/2} / Γ((n−1)/2) · (genus − 1)`.
pub fn product_volume(n: u32, genus: u32) -> Result<f64> {
    if n < 4 {
        return Err(Error::Domain(format!("n must be at least 4, got {n}")));
    }
    if genus < 2 {
        return Err(Error::Domain(format!("genus must be at least 2, got {genus}")));
    }
    let n = f64::from(n);
    let (ln_g, _) = ln_gamma_real((n - 1.0) / 2.0)?;
    Ok(8.0 * ((n + 1.0) / 2.0 * PI.ln() - ln_g).exp() * f64::from(genus - 1))
}
