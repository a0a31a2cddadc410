//! Via layouts and the distance semantics everything downstream relies on.
//!
//! Coordinates are in nanometers. A layout is a list of via centers plus one
//! shared via diameter. Distances between vias are measured border to border
//! (center distance minus the diameter, clamped at zero); the DSA pairing
//! window is measured center to center.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Relative tolerance for distance-threshold comparisons. Two distances
/// closer than this (relative to the threshold) compare as equal.
pub const REL_TOL: f64 = 1e-9;

/// Absolute tolerance in nm for axis alignment checks.
pub const AXIS_TOL: f64 = 1e-6;

/// Absolute tolerance in radians for right-angle (L-shape) detection.
pub const RIGHT_ANGLE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Via {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

/// Lithography/DSA process parameters plus the knobs that control group
/// enumeration. `validate` must pass before the rules are used.
#[derive(Debug, Clone, PartialEq)]
pub struct TechRules {
    /// Border-to-border distance below which two vias conflict, nm.
    pub litho_dist: f64,
    /// Lower end of the DSA pairing window (center to center), nm.
    pub l0: f64,
    /// Upper end of the DSA pairing window (center to center), nm.
    pub u0: f64,
    /// Which geometric restriction applies to DSA chains.
    pub tech: Tech,
    /// Allowed direction-change window at interior chain vias, degrees.
    /// 180 is a straight chain; only used by `Tech::EuvAngle`.
    pub angle_window_deg: (f64, f64),
    /// Maximum number of vias in one group.
    pub k_max: usize,
    /// Maximum number of patterning steps the solver may use.
    pub color_bound: usize,
    /// Count border distance exactly equal to `litho_dist` as a conflict.
    /// Off by default: a conflict means strictly below the litho distance.
    pub inclusive_conflict: bool,
    /// Under `Tech::Unrestricted`, drop groups whose chain turns by exactly
    /// 90 degrees at some via.
    pub remove_l_shapes: bool,
    /// Which edge set chord-freeness of induced-mode groups is checked
    /// against.
    pub induced_wrt: InducedWrt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tech {
    /// 193 nm immersion: DSA pairs and chains must be axis parallel.
    Axis193i,
    /// EUV: chains may bend within the angle window; no edge-level filter.
    EuvAngle,
    /// No geometric restriction beyond the distance windows.
    Unrestricted,
}

/// Edge set used for the chord check in induced group enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InducedWrt {
    /// No conflict edge between non-consecutive chain vias (default).
    Conflict,
    /// Only no DSA edge between non-consecutive chain vias.
    Dsa,
}

impl Default for TechRules {
    fn default() -> Self {
        TechRules {
            litho_dist: 31.0,
            l0: 20.0,
            u0: 40.0,
            tech: Tech::Axis193i,
            angle_window_deg: (135.0, 225.0),
            k_max: 3,
            color_bound: 5,
            inclusive_conflict: false,
            remove_l_shapes: false,
            induced_wrt: InducedWrt::Conflict,
        }
    }
}

impl TechRules {
    pub fn validate(&self) -> Result<(), LayoutError> {
        if !(self.litho_dist > 0.0) {
            return Err(LayoutError::InvalidRules(format!(
                "litho_dist must be positive, got {}",
                self.litho_dist
            )));
        }
        if !(self.l0 > 0.0 && self.l0 <= self.u0) {
            return Err(LayoutError::InvalidRules(format!(
                "DSA window requires 0 < l0 <= u0, got [{}, {}]",
                self.l0, self.u0
            )));
        }
        if self.k_max < 1 {
            return Err(LayoutError::InvalidRules("k_max must be at least 1".into()));
        }
        if self.color_bound < 1 {
            return Err(LayoutError::InvalidRules(
                "color_bound must be at least 1".into(),
            ));
        }
        let (lo, hi) = self.angle_window_deg;
        if !(0.0..=360.0).contains(&lo) || !(0.0..=360.0).contains(&hi) || lo > hi {
            return Err(LayoutError::InvalidRules(format!(
                "angle window must satisfy 0 <= lo <= hi <= 360, got [{lo}, {hi}]"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vias {a} and {b} share coordinates ({x}, {y})")]
    DuplicateCoordinate { a: usize, b: usize, x: f64, y: f64 },
    #[error("diameter must be positive, got {0}")]
    NonPositiveDiameter(f64),
    #[error("missing `diameter` header before first via row")]
    MissingDiameter,
    #[error("rescaling needs at least 2 vias, layout has {0}")]
    TooFewVias(usize),
    #[error("vias {a} and {b} are coincident, rescaling is undefined")]
    CoincidentVias { a: usize, b: usize },
    #[error("invalid technology rules: {0}")]
    InvalidRules(String),
    #[error(
        "cannot generate {n} vias at conflict density {target}; closest achieved {achieved:.3}"
    )]
    UnreachableDensity { n: usize, target: f64, achieved: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Euclidean distance between two via centers.
pub fn center_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    (dx * dx + dy * dy).sqrt()
}

/// Border-to-border distance of two vias with a common diameter: the center
/// distance minus the diameter, clamped at zero for overlapping vias.
pub fn border_distance(a: (f64, f64), b: (f64, f64), diameter: f64) -> f64 {
    (center_distance(a, b) - diameter).max(0.0)
}

/// Compare a distance against a threshold, treating values within
/// `REL_TOL * max(1, threshold)` as equal.
pub fn dist_cmp(d: f64, threshold: f64) -> Ordering {
    let tol = REL_TOL * threshold.abs().max(1.0);
    if (d - threshold).abs() <= tol {
        Ordering::Equal
    } else if d < threshold {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Direction change at `mid` when walking `prev -> mid -> next`, mapped into
/// [0, 360). A straight continuation is 180; a right-angle turn is 90 or 270.
pub fn direction_change_deg(prev: (f64, f64), mid: (f64, f64), next: (f64, f64)) -> f64 {
    let h1 = (mid.1 - prev.1).atan2(mid.0 - prev.0);
    let h2 = (next.1 - mid.1).atan2(next.0 - mid.0);
    let delta = (h2 - h1).to_degrees();
    (180.0 + delta).rem_euclid(360.0)
}

/// Angle at `mid` between the rays toward `prev` and `next`, in radians
/// within [0, pi].
pub fn corner_angle_rad(prev: (f64, f64), mid: (f64, f64), next: (f64, f64)) -> f64 {
    let ax = prev.0 - mid.0;
    let ay = prev.1 - mid.1;
    let bx = next.0 - mid.0;
    let by = next.1 - mid.1;
    let na = (ax * ax + ay * ay).sqrt();
    let nb = (bx * bx + by * by).sqrt();
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    let c = ((ax * bx + ay * by) / (na * nb)).clamp(-1.0, 1.0);
    c.acos()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub vias: Vec<Via>,
    pub diameter: f64,
    /// Present when the layout came out of the random generator.
    pub seed: Option<u64>,
}

impl Layout {
    /// Build a layout from center coordinates, assigning ids by position in
    /// the list. Rejects non-positive diameters and exactly coincident
    /// coordinates.
    pub fn new(points: Vec<(f64, f64)>, diameter: f64) -> Result<Layout, LayoutError> {
        if !(diameter > 0.0) {
            return Err(LayoutError::NonPositiveDiameter(diameter));
        }
        let mut seen: HashMap<(u64, u64), usize> = HashMap::with_capacity(points.len());
        for (i, &(x, y)) in points.iter().enumerate() {
            if let Some(&j) = seen.get(&(x.to_bits(), y.to_bits())) {
                return Err(LayoutError::DuplicateCoordinate { a: j, b: i, x, y });
            }
            seen.insert((x.to_bits(), y.to_bits()), i);
        }
        let vias = points
            .into_iter()
            .enumerate()
            .map(|(id, (x, y))| Via { id, x, y })
            .collect();
        Ok(Layout {
            vias,
            diameter,
            seed: None,
        })
    }

    pub fn len(&self) -> usize {
        self.vias.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vias.is_empty()
    }

    pub fn positions(&self) -> Vec<(f64, f64)> {
        self.vias.iter().map(|v| (v.x, v.y)).collect()
    }

    /// Parse the point-list format: a `diameter <nm>` header, an optional
    /// `seed <int>` header, then one `<x> <y>` row per via. `#` starts a
    /// comment line; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Layout, LayoutError> {
        let mut diameter: Option<f64> = None;
        let mut seed: Option<u64> = None;
        let mut points: Vec<(f64, f64)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let first = parts.next().unwrap();
            if first == "diameter" {
                if points.is_empty() && diameter.is_none() {
                    let v = parse_f64(parts.next(), line_no, "diameter value")?;
                    if parts.next().is_some() {
                        return Err(LayoutError::Parse {
                            line: line_no,
                            msg: "trailing tokens after diameter".into(),
                        });
                    }
                    diameter = Some(v);
                } else {
                    return Err(LayoutError::Parse {
                        line: line_no,
                        msg: "diameter header repeated or after via rows".into(),
                    });
                }
                continue;
            }
            if first == "seed" {
                let tok = parts.next().ok_or_else(|| LayoutError::Parse {
                    line: line_no,
                    msg: "missing seed value".into(),
                })?;
                let v = tok.parse::<u64>().map_err(|_| LayoutError::Parse {
                    line: line_no,
                    msg: format!("bad seed value `{tok}`"),
                })?;
                seed = Some(v);
                continue;
            }
            if diameter.is_none() {
                return Err(LayoutError::MissingDiameter);
            }
            let x = parse_f64(Some(first), line_no, "x coordinate")?;
            let y = parse_f64(parts.next(), line_no, "y coordinate")?;
            if parts.next().is_some() {
                return Err(LayoutError::Parse {
                    line: line_no,
                    msg: "trailing tokens after coordinates".into(),
                });
            }
            points.push((x, y));
        }
        let diameter = diameter.ok_or(LayoutError::MissingDiameter)?;
        let mut layout = Layout::new(points, diameter)?;
        layout.seed = seed;
        Ok(layout)
    }

    pub fn from_file(path: &Path) -> Result<Layout, LayoutError> {
        let text = std::fs::read_to_string(path)?;
        Layout::parse(&text)
    }

    /// Serialize back to the point-list format. Coordinates keep up to three
    /// decimal places; output is byte-stable for a given layout.
    pub fn to_point_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "diameter {}", fmt_coord(self.diameter));
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed {seed}");
        }
        for v in &self.vias {
            let _ = writeln!(out, "{} {}", fmt_coord(v.x), fmt_coord(v.y));
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<(), LayoutError> {
        std::fs::write(path, self.to_point_list())?;
        Ok(())
    }

    pub fn bounding_box(&self) -> Option<((f64, f64), (f64, f64))> {
        if self.vias.is_empty() {
            return None;
        }
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vias {
            min.0 = min.0.min(v.x);
            min.1 = min.1.min(v.y);
            max.0 = max.0.max(v.x);
            max.1 = max.1.max(v.y);
        }
        Some((min, max))
    }

    /// Smallest center-to-center distance and the pair attaining it.
    pub fn min_center_distance(&self) -> Option<(f64, usize, usize)> {
        let n = self.vias.len();
        if n < 2 {
            return None;
        }
        if n <= 512 {
            let mut best: Option<(f64, usize, usize)> = None;
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = center_distance(
                        (self.vias[i].x, self.vias[i].y),
                        (self.vias[j].x, self.vias[j].y),
                    );
                    if best.map_or(true, |(b, _, _)| d < b) {
                        best = Some((d, i, j));
                    }
                }
            }
            return best;
        }
        self.min_center_distance_grid()
    }

    /// Grid-accelerated nearest pair: bucket points, then expand rings around
    /// each point until the ring's lower bound exceeds the best distance.
    fn min_center_distance_grid(&self) -> Option<(f64, usize, usize)> {
        let ((minx, miny), (maxx, maxy)) = self.bounding_box().unwrap();
        let n = self.vias.len();
        let span = (maxx - minx).max(maxy - miny);
        let cell = (span / (n as f64).sqrt()).max(f64::MIN_POSITIVE);
        let key = |x: f64, y: f64| {
            (
                ((x - minx) / cell).floor() as i64,
                ((y - miny) / cell).floor() as i64,
            )
        };
        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, v) in self.vias.iter().enumerate() {
            grid.entry(key(v.x, v.y)).or_default().push(i);
        }
        let max_ring = (span / cell).ceil() as i64 + 2;
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..n {
            let v = &self.vias[i];
            let (cx, cy) = key(v.x, v.y);
            for ring in 0..=max_ring {
                let ring_min = (ring - 1).max(0) as f64 * cell;
                if let Some((b, _, _)) = best {
                    if ring_min > b {
                        break;
                    }
                }
                for (gx, gy) in ring_cells(cx, cy, ring) {
                    if let Some(bucket) = grid.get(&(gx, gy)) {
                        for &j in bucket {
                            if j <= i {
                                continue;
                            }
                            let w = &self.vias[j];
                            let d = center_distance((v.x, v.y), (w.x, w.y));
                            if best.map_or(true, |(b, _, _)| d < b) {
                                best = Some((d, i, j));
                            }
                        }
                    }
                }
            }
        }
        best
    }

    /// Uniformly scale the centers so the minimum center distance becomes
    /// twice `target_pitch`, then set the diameter to `target_pitch`. After
    /// this the closest pair sits at border distance exactly one pitch.
    pub fn rescale_to_pitch(&self, target_pitch: f64) -> Result<Layout, LayoutError> {
        if !(target_pitch > 0.0) {
            return Err(LayoutError::InvalidRules(format!(
                "target pitch must be positive, got {target_pitch}"
            )));
        }
        if self.vias.len() < 2 {
            return Err(LayoutError::TooFewVias(self.vias.len()));
        }
        let (dmin, a, b) = self.min_center_distance().unwrap();
        if dmin <= 0.0 {
            return Err(LayoutError::CoincidentVias { a, b });
        }
        let s = 2.0 * target_pitch / dmin;
        let points = self.vias.iter().map(|v| (v.x * s, v.y * s)).collect();
        Layout::new(points, target_pitch)
    }
}

fn parse_f64(tok: Option<&str>, line: usize, what: &str) -> Result<f64, LayoutError> {
    let tok = tok.ok_or_else(|| LayoutError::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    let v = tok.parse::<f64>().map_err(|_| LayoutError::Parse {
        line,
        msg: format!("bad {what} `{tok}`"),
    })?;
    if !v.is_finite() {
        return Err(LayoutError::Parse {
            line,
            msg: format!("non-finite {what} `{tok}`"),
        });
    }
    Ok(v)
}

/// Format a coordinate with up to three decimal places, trimming trailing
/// zeros so the output stays compact and stable.
fn fmt_coord(v: f64) -> String {
    let mut s = format!("{v:.3}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Cells at Chebyshev distance `ring` from `(cx, cy)`.
fn ring_cells(cx: i64, cy: i64, ring: i64) -> Vec<(i64, i64)> {
    if ring == 0 {
        return vec![(cx, cy)];
    }
    let mut cells = Vec::with_capacity((8 * ring) as usize);
    for dx in -ring..=ring {
        cells.push((cx + dx, cy - ring));
        cells.push((cx + dx, cy + ring));
    }
    for dy in (-ring + 1)..ring {
        cells.push((cx - ring, cy + dy));
        cells.push((cx + ring, cy + dy));
    }
    cells
}

/// Generator internals: sequential random placement with a hard minimum
/// separation of one via diameter border to border (so vias never overlap),
/// plus a measured-density feedback loop on the region size.
struct Placer {
    side: f64,
    min_sep: f64,
    cell: f64,
    grid: HashMap<(i64, i64), Vec<(f64, f64)>>,
    points: Vec<(f64, f64)>,
}

impl Placer {
    fn new(side: f64, min_sep: f64) -> Placer {
        Placer {
            side,
            min_sep,
            cell: min_sep,
            grid: HashMap::new(),
            points: Vec::new(),
        }
    }

    fn key(&self, x: f64, y: f64) -> (i64, i64) {
        ((x / self.cell).floor() as i64, (y / self.cell).floor() as i64)
    }

    fn try_place(&mut self, x: f64, y: f64) -> bool {
        let (cx, cy) = self.key(x, y);
        for gx in (cx - 1)..=(cx + 1) {
            for gy in (cy - 1)..=(cy + 1) {
                if let Some(bucket) = self.grid.get(&(gx, gy)) {
                    for &(px, py) in bucket {
                        if center_distance((x, y), (px, py)) < self.min_sep {
                            return false;
                        }
                    }
                }
            }
        }
        self.grid.entry((cx, cy)).or_default().push((x, y));
        self.points.push((x, y));
        true
    }

    fn fill(&mut self, n: usize, rng: &mut ChaCha8Rng, budget: usize) -> bool {
        let mut proposals = 0usize;
        while self.points.len() < n {
            if proposals >= budget {
                return false;
            }
            proposals += 1;
            let x = rng.gen::<f64>() * self.side;
            let y = rng.gen::<f64>() * self.side;
            self.try_place(x, y);
        }
        true
    }
}

/// Conflict edge count per via under the default rules, computed with a
/// standalone grid pass (independent of the conflict module).
fn conflict_density(points: &[(f64, f64)], threshold: f64) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let cell = threshold;
    let key = |x: f64, y: f64| ((x / cell).floor() as i64, (y / cell).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let mut edges = 0usize;
    for (i, &(x, y)) in points.iter().enumerate() {
        let (cx, cy) = key(x, y);
        for gx in (cx - 1)..=(cx + 1) {
            for gy in (cy - 1)..=(cy + 1) {
                if let Some(bucket) = grid.get(&(gx, gy)) {
                    for &j in bucket {
                        let d = center_distance((x, y), points[j]);
                        if dist_cmp(d, threshold) == Ordering::Less {
                            edges += 1;
                        }
                    }
                }
            }
        }
        grid.entry((cx, cy)).or_default().push(i);
    }
    edges as f64 / points.len() as f64
}

/// Generate `n` vias uniformly at random in a square region sized so that the
/// conflict graph under default rules has roughly `density_target` edges per
/// via. Placement enforces a minimum center separation of two diameters.
/// Deterministic for a fixed `(n, density_target, seed)` triple; the achieved
/// density is within 20 percent of the target for n >= 100, otherwise an
/// `UnreachableDensity` error reports the closest density reached.
pub fn generate_random_layout(
    n: usize,
    density_target: f64,
    seed: u64,
) -> Result<Layout, LayoutError> {
    let diameter = 10.0;
    if n == 0 {
        let mut l = Layout::new(Vec::new(), diameter)?;
        l.seed = Some(seed);
        return Ok(l);
    }
    if !(density_target >= 0.0) {
        return Err(LayoutError::InvalidRules(format!(
            "density target must be non-negative, got {density_target}"
        )));
    }
    let rules = TechRules::default();
    let threshold = rules.litho_dist + diameter;
    let min_sep = 2.0 * diameter;
    // Poisson estimate: density ~ n * pi * r^2 / (2 * side^2).
    let mut side = threshold
        * (n as f64 * std::f64::consts::PI / (2.0 * density_target.max(1e-3))).sqrt();
    side = side.max(min_sep * (n as f64).sqrt());
    let mut best: Option<(Vec<(f64, f64)>, f64)> = None;
    for attempt in 0..8u64 {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9E3779B97F4A7C15)));
        let mut placer = Placer::new(side, min_sep);
        if !placer.fill(n, &mut rng, 400 * n + 1000) {
            // Region too crowded to pack n vias; open it up and retry.
            side *= 1.3;
            continue;
        }
        let achieved = conflict_density(&placer.points, threshold);
        let close_enough = n < 100
            || (achieved >= 0.8 * density_target && achieved <= 1.2 * density_target);
        if close_enough {
            let mut layout = Layout::new(placer.points, diameter)?;
            layout.seed = Some(seed);
            return Ok(layout);
        }
        if best
            .as_ref()
            .map_or(true, |(_, d)| (d - density_target).abs() > (achieved - density_target).abs())
        {
            best = Some((placer.points, achieved));
        }
        if achieved > 0.0 {
            side *= (achieved / density_target).sqrt().clamp(0.5, 2.0);
        } else {
            side *= 0.5;
        }
    }
    Err(LayoutError::UnreachableDensity {
        n,
        target: density_target,
        achieved: best.map(|(_, d)| d).unwrap_or(0.0),
    })
}
