//! Seeded, reproducible fabrication of ground-truth intersection sets and
//! adversarial negatives, all with exact rational coordinates.
//!
//! Reproducibility contract: scenarios are a pure function of
//! `(kind, m, n, seed)`. The generator is splitmix64 (see [`Splitmix64`]),
//! random rationals are `p/q` with `p` drawn uniformly from `[-9, 9]` and
//! `q` from `[1, 9]` via `next_u64() % range`, and rejection sampling with
//! a hard cap of 1000 draws enforces general position. Identical inputs
//! reproduce identical scenarios on every platform.

use serde::{Deserialize, Serialize};

use crate::decision::decide_intersection_set;
use crate::error::Error;
use crate::independence::{separable_point, PointSet};
use crate::poly::{rat, Poly, Q};

/// Splitmix64: the 64-bit state advances by `0x9E3779B97F4A7C15` per draw,
/// and the output mix is
/// `z ^= z >> 30, z *= 0xBF58476D1CE4E5B9; z ^= z >> 27, z *= 0x94D049BB133111EB; z ^= z >> 31`
/// (all wrapping). Fixed here as the cross-platform scenario contract.
#[derive(Debug, Clone)]
pub struct Splitmix64 {
    state: u64,
}

impl Splitmix64 {
    pub fn new(seed: u64) -> Splitmix64 {
        Splitmix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..bound` via modulo; bias is irrelevant for
    /// scenario generation and keeps the contract trivial to restate.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// A rational `p/q`, `p` in `[-9, 9]`, `q` in `[1, 9]`, reduced.
    pub fn rational(&mut self) -> Q {
        let p = self.below(19) as i64 - 9;
        let q = self.below(9) as i64 + 1;
        rat(p, q)
    }

    pub fn point(&mut self) -> (Q, Q) {
        (self.rational(), self.rational())
    }
}

/// Hard cap on rejection sampling; exceeding it is a loud generation error.
pub const RESAMPLE_CAP: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScenarioKind {
    #[serde(rename = "line_product_grid")]
    LineProductGrid,
    #[serde(rename = "conic_chords")]
    ConicChords,
    #[serde(rename = "reducible_mixed")]
    ReducibleMixed,
    #[serde(rename = "negative_moved_point")]
    NegativeMovedPoint,
    #[serde(rename = "negative_deleted_point")]
    NegativeDeletedPoint,
    #[serde(rename = "negative_collinear_overload")]
    NegativeCollinearOverload,
    #[serde(rename = "random_generic")]
    RandomGeneric,
}

impl ScenarioKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioKind::LineProductGrid => "line_product_grid",
            ScenarioKind::ConicChords => "conic_chords",
            ScenarioKind::ReducibleMixed => "reducible_mixed",
            ScenarioKind::NegativeMovedPoint => "negative_moved_point",
            ScenarioKind::NegativeDeletedPoint => "negative_deleted_point",
            ScenarioKind::NegativeCollinearOverload => "negative_collinear_overload",
            ScenarioKind::RandomGeneric => "random_generic",
        }
    }
}

/// One generated instance: a point set with its expected verdict and, for
/// positives, the intended witness curves.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub m: i64,
    pub n: i64,
    pub seed: u64,
    #[serde(flatten)]
    pub points: PointSet,
    pub truth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_m: Option<Poly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_n: Option<Poly>,
}

/// Non-vertical line `y = a*x + b` as the polynomial `y - a*x - b`.
fn slope_line(a: &Q, b: &Q) -> Poly {
    Poly::from_terms(1, &[(0, 1, rat(1, 1)), (1, 0, -a.clone()), (0, 0, -b.clone())])
        .expect("linear terms fit")
}

fn intersect_slope_lines(a1: &Q, b1: &Q, a2: &Q, b2: &Q) -> Option<(Q, Q)> {
    if a1 == a2 {
        return None;
    }
    let x = (b2 - b1) / (a1 - a2);
    let y = a1 * &x + b1;
    Some((x, y))
}

fn product_of(lines: &[Poly]) -> Poly {
    lines
        .iter()
        .skip(1)
        .fold(lines[0].clone(), |acc, l| acc.multiply(l))
}

/// All `mn` pairwise intersections of a family of `m` random lines with a
/// family of `n` random lines, in general position: intersections distinct
/// and none lying on a third line. `truth = true` with the two products as
/// intended witnesses.
pub fn gen_line_product(m: i64, n: i64, seed: u64) -> Result<Scenario, Error> {
    if m < 1 || m > n {
        return Err(Error::InvalidDegrees { m, n });
    }
    let mut rng = Splitmix64::new(seed);
    for _ in 0..RESAMPLE_CAP {
        // 2(m+n) rational coefficients: slope and intercept per line
        let fam_m: Vec<(Q, Q)> = (0..m).map(|_| (rng.rational(), rng.rational())).collect();
        let fam_n: Vec<(Q, Q)> = (0..n).map(|_| (rng.rational(), rng.rational())).collect();
        let Some(points) = line_grid_points(&fam_m, &fam_n) else {
            continue;
        };
        let lines_m: Vec<Poly> = fam_m.iter().map(|(a, b)| slope_line(a, b)).collect();
        let lines_n: Vec<Poly> = fam_n.iter().map(|(a, b)| slope_line(a, b)).collect();
        return Ok(Scenario {
            kind: ScenarioKind::LineProductGrid,
            m,
            n,
            seed,
            points,
            truth: true,
            sigma_m: Some(product_of(&lines_m)),
            sigma_n: Some(product_of(&lines_n)),
        });
    }
    Err(Error::GenerationCap(RESAMPLE_CAP))
}

/// Cross intersections of two slope-intercept line families, or `None` if
/// the draw violates general position.
fn line_grid_points(fam_m: &[(Q, Q)], fam_n: &[(Q, Q)]) -> Option<PointSet> {
    let all: Vec<(Q, Q)> = fam_m.iter().chain(fam_n).cloned().collect();
    for (i, l) in all.iter().enumerate() {
        if all[..i].contains(l) {
            return None;
        }
    }
    let mut pts = Vec::with_capacity(fam_m.len() * fam_n.len());
    for (mi, (a1, b1)) in fam_m.iter().enumerate() {
        for (ni, (a2, b2)) in fam_n.iter().enumerate() {
            let p = intersect_slope_lines(a1, b1, a2, b2)?;
            if pts.contains(&p) {
                return None;
            }
            // not on any third line of either family
            let on_third = fam_m
                .iter()
                .enumerate()
                .any(|(k, (a, b))| k != mi && (a * &p.0 + b) == p.1)
                || fam_n
                    .iter()
                    .enumerate()
                    .any(|(k, (a, b))| k != ni && (a * &p.0 + b) == p.1);
            if on_third {
                return None;
            }
            pts.push(p);
        }
    }
    PointSet::new(pts).ok()
}

/// Rational point on the unit circle from the tangent half-angle value `t`:
/// `((1 - t^2)/(1 + t^2), 2t/(1 + t^2))`. Injective; never hits `(-1, 0)`.
fn circle_point(t: &Q) -> (Q, Q) {
    let t2 = t * t;
    let denom = &t2 + rat(1, 1);
    ((rat(1, 1) - &t2) / &denom, (rat(2, 1) * t) / &denom)
}

fn unit_circle() -> Poly {
    Poly::from_terms(2, &[(2, 0, rat(1, 1)), (0, 2, rat(1, 1)), (0, 0, rat(-1, 1))])
        .expect("conic terms fit")
}

/// `2n` rational points on the unit circle, paired consecutively into `n`
/// chords. `truth = true` with the circle and the chord product as
/// witnesses; the effective pair of degrees is `(2, n)` ordered.
pub fn gen_conic_chords(n: i64, seed: u64) -> Result<Scenario, Error> {
    if n < 1 {
        return Err(Error::InvalidDegrees { m: 2, n });
    }
    let mut rng = Splitmix64::new(seed);
    for _ in 0..RESAMPLE_CAP {
        let mut ts: Vec<Q> = Vec::with_capacity(2 * n as usize);
        let mut ok = true;
        for _ in 0..2 * n {
            let t = rng.rational();
            if ts.contains(&t) {
                ok = false;
                break;
            }
            ts.push(t);
        }
        if !ok {
            continue;
        }
        let pts: Vec<(Q, Q)> = ts.iter().map(circle_point).collect();
        let chords: Vec<Poly> = pts
            .chunks(2)
            .map(|pair| crate::curves::line_through(&pair[0], &pair[1]))
            .collect();
        let circle = unit_circle();
        let sigma_chords = product_of(&chords);
        let points = PointSet::new(pts).expect("distinct t gives distinct points");
        // ordered degrees: the circle is the smaller curve unless n < 2
        let (m_out, n_out, sm, sn) = if n >= 2 {
            (2, n, circle, sigma_chords)
        } else {
            (n, 2, sigma_chords, circle)
        };
        return Ok(Scenario {
            kind: ScenarioKind::ConicChords,
            m: m_out,
            n: n_out,
            seed,
            points,
            truth: true,
            sigma_m: Some(sm),
            sigma_n: Some(sn),
        });
    }
    Err(Error::GenerationCap(RESAMPLE_CAP))
}

/// Mixed reducible positive for `3 <= m <= n`: the degree-`m` curve is the
/// unit circle times `m - 2` random lines, the degree-`n` curve is `n`
/// chords of the circle; each chord contributes its two circle points plus
/// one crossing per line.
pub fn gen_reducible_mixed(m: i64, n: i64, seed: u64) -> Result<Scenario, Error> {
    if m < 3 || m > n {
        return Err(Error::UnsupportedScenario {
            m,
            n,
            reason: "mixed reducible curves need 3 <= m <= n".into(),
        });
    }
    let mut rng = Splitmix64::new(seed);
    'attempt: for _ in 0..RESAMPLE_CAP {
        let mut ts: Vec<Q> = Vec::with_capacity(2 * n as usize);
        let mut ok = true;
        for _ in 0..2 * n {
            let t = rng.rational();
            if ts.contains(&t) {
                ok = false;
                break;
            }
            ts.push(t);
        }
        if !ok {
            continue;
        }
        let circle_pts: Vec<(Q, Q)> = ts.iter().map(circle_point).collect();
        let chord_coeffs: Vec<((Q, Q), (Q, Q))> = circle_pts
            .chunks(2)
            .map(|pair| (pair[0].clone(), pair[1].clone()))
            .collect();
        let extra_lines: Vec<(Q, Q)> = (0..m - 2)
            .map(|_| (rng.rational(), rng.rational()))
            .collect();

        let mut pts: Vec<(Q, Q)> = circle_pts.clone();
        // chord x line crossings
        for (p1, p2) in &chord_coeffs {
            // chord as slope-intercept; vertical chords get resampled
            if p1.0 == p2.0 {
                continue 'attempt;
            }
            let a_c = (&p2.1 - &p1.1) / (&p2.0 - &p1.0);
            let b_c = &p1.1 - &a_c * &p1.0;
            for (a_l, b_l) in &extra_lines {
                let Some(p) = intersect_slope_lines(&a_c, &b_c, a_l, b_l) else {
                    continue 'attempt;
                };
                // duplicates catch crossings that land on another component
                if pts.contains(&p) {
                    continue 'attempt;
                }
                if unit_circle().vanishes_at(&p) {
                    continue 'attempt;
                }
                pts.push(p);
            }
        }
        // circle points must avoid the extra lines; line-line and
        // chord-chord coincidences already covered by distinctness above,
        // but a circle point on an extra line breaks exactness of the count
        for cp in &circle_pts {
            if extra_lines.iter().any(|(a, b)| (a * &cp.0 + b) == cp.1) {
                continue 'attempt;
            }
        }
        // extra lines pairwise distinct; stray incidences beyond that are
        // caught by the duplicate checks and the final verification
        for (i, (a1, b1)) in extra_lines.iter().enumerate() {
            for (a2, b2) in &extra_lines[..i] {
                if (a1, b1) == (a2, b2) {
                    continue 'attempt;
                }
            }
        }
        if pts.len() != (m * n) as usize {
            continue 'attempt;
        }
        let Ok(points) = PointSet::new(pts) else {
            continue 'attempt;
        };

        let chords: Vec<Poly> = chord_coeffs
            .iter()
            .map(|(p1, p2)| crate::curves::line_through(p1, p2))
            .collect();
        let sigma_n = product_of(&chords);
        let mut sigma_m = unit_circle();
        for (a, b) in &extra_lines {
            sigma_m = sigma_m.multiply(&slope_line(a, b));
        }
        // full witness verification closes any remaining degeneracy
        if !crate::decision::verify_intersection_set(&points, &sigma_m, &sigma_n) {
            continue 'attempt;
        }
        return Ok(Scenario {
            kind: ScenarioKind::ReducibleMixed,
            m,
            n,
            seed,
            points,
            truth: true,
            sigma_m: Some(sigma_m),
            sigma_n: Some(sigma_n),
        });
    }
    Err(Error::GenerationCap(RESAMPLE_CAP))
}

/// Kinds of adversarial edit applied to a positive base scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegativeKind {
    /// One point replaced by a random point off both intended curves; the
    /// replacement is resampled until condition a) fails, so the label
    /// `truth = false` is verified at generation time.
    MovedPoint,
    /// One point deleted: cardinality `mn - 1`, rejected as a cardinality
    /// mismatch. Out-of-theorem input by construction.
    DeletedPoint,
    /// `n + 2` points forced onto one line, the rest generic, at
    /// cardinality `mn`. No intersection set can carry that many collinear
    /// points, so the verdict is false with an a) or b) certificate.
    CollinearOverload,
}

/// Derive a negative scenario from a verified positive one.
pub fn gen_negative(base: &Scenario, kind: NegativeKind, seed: u64) -> Result<Scenario, Error> {
    if !base.truth {
        return Err(Error::Precondition("negative base must be a positive scenario".into()));
    }
    let (m, n) = (base.m, base.n);
    let mn = (m * n) as usize;
    let mut rng = Splitmix64::new(seed);
    match kind {
        NegativeKind::DeletedPoint => {
            let drop_idx = rng.below(mn as u64) as usize;
            let points = base.points.without_index(drop_idx);
            Ok(Scenario {
                kind: ScenarioKind::NegativeDeletedPoint,
                m,
                n,
                seed,
                points,
                truth: false,
                sigma_m: None,
                sigma_n: None,
            })
        }
        NegativeKind::MovedPoint => {
            if !moved_point_negative_exists(m, n) {
                return Err(Error::UnsupportedScenario {
                    m,
                    n,
                    reason: "a generically moved point still yields an intersection set".into(),
                });
            }
            let sm = base.sigma_m.as_ref().expect("positive scenario has witnesses");
            let sn = base.sigma_n.as_ref().expect("positive scenario has witnesses");
            let replace_idx = rng.below(mn as u64) as usize;
            let rest = base.points.without_index(replace_idx);
            for _ in 0..RESAMPLE_CAP {
                let candidate = rng.point();
                if rest.contains(&candidate)
                    || sm.vanishes_at(&candidate)
                    || sn.vanishes_at(&candidate)
                {
                    continue;
                }
                let mut pts = rest.points().to_vec();
                pts.insert(replace_idx, candidate);
                let moved = PointSet::new(pts).expect("distinctness checked");
                // verified label: condition a) must fail
                if separable_point(&moved, m + n - 3).is_none() {
                    continue;
                }
                return Ok(Scenario {
                    kind: ScenarioKind::NegativeMovedPoint,
                    m,
                    n,
                    seed,
                    points: moved,
                    truth: false,
                    sigma_m: None,
                    sigma_n: None,
                });
            }
            Err(Error::GenerationCap(RESAMPLE_CAP))
        }
        NegativeKind::CollinearOverload => {
            let overload = (n + 2) as usize;
            if mn < overload {
                return Err(Error::UnsupportedScenario {
                    m,
                    n,
                    reason: format!("cannot place {overload} collinear points among {mn}"),
                });
            }
            for _ in 0..RESAMPLE_CAP {
                // a random non-vertical line and n+2 distinct points on it
                let a = rng.rational();
                let b = rng.rational();
                let mut pts: Vec<(Q, Q)> = Vec::with_capacity(mn);
                let mut ok = true;
                for _ in 0..overload {
                    let x = rng.rational();
                    let p = (x.clone(), &a * &x + &b);
                    if pts.contains(&p) {
                        ok = false;
                        break;
                    }
                    pts.push(p);
                }
                if !ok {
                    continue;
                }
                let mut draws = 0u32;
                while pts.len() < mn && draws < RESAMPLE_CAP {
                    draws += 1;
                    let p = rng.point();
                    // keep the extras off the line and distinct
                    if pts.contains(&p) || (&a * &p.0 + &b) == p.1 {
                        continue;
                    }
                    pts.push(p);
                }
                if pts.len() < mn {
                    continue;
                }
                let points = PointSet::new(pts).expect("distinctness checked");
                debug_assert!(
                    !decide_intersection_set(&points, m, n)
                        .map(|d| d.verdict)
                        .unwrap_or(true),
                    "an overloaded line admits no witness pair"
                );
                return Ok(Scenario {
                    kind: ScenarioKind::NegativeCollinearOverload,
                    m,
                    n,
                    seed,
                    points,
                    truth: false,
                    sigma_m: None,
                    sigma_n: None,
                });
            }
            Err(Error::GenerationCap(RESAMPLE_CAP))
        }
    }
}

/// Do adversarial generic configurations exist at all? When
/// `dim Pi_kappa < mn` (exactly the pairs (1,1), (1,2) and (2,2)), the
/// space of degree-`kappa` curves is too small to separate any point of a
/// generic configuration, condition a) holds vacuously, and every generic
/// set of `mn` points really is an intersection set.
fn moved_point_negative_exists(m: i64, n: i64) -> bool {
    crate::poly::dim_pi(m + n - 3) >= (m * n) as usize
}

/// `mn` random distinct points, resampled until condition a) fails, labeled
/// `truth = false`. Unsupported for `(1,1)`, `(1,2)` and `(2,2)`, where
/// every generic configuration is an intersection set.
pub fn gen_random_generic(m: i64, n: i64, seed: u64) -> Result<Scenario, Error> {
    if m < 1 || m > n {
        return Err(Error::InvalidDegrees { m, n });
    }
    if !moved_point_negative_exists(m, n) {
        return Err(Error::UnsupportedScenario {
            m,
            n,
            reason: "generic configurations of this size are intersection sets".into(),
        });
    }
    let mn = (m * n) as usize;
    let mut rng = Splitmix64::new(seed);
    for _ in 0..RESAMPLE_CAP {
        let mut pts: Vec<(Q, Q)> = Vec::with_capacity(mn);
        let mut draws = 0u32;
        while pts.len() < mn && draws < RESAMPLE_CAP {
            draws += 1;
            let p = rng.point();
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        if pts.len() < mn {
            continue;
        }
        let points = PointSet::new(pts).expect("distinctness checked");
        if separable_point(&points, m + n - 3).is_none() {
            continue;
        }
        return Ok(Scenario {
            kind: ScenarioKind::RandomGeneric,
            m,
            n,
            seed,
            points,
            truth: false,
            sigma_m: None,
            sigma_n: None,
        });
    }
    Err(Error::GenerationCap(RESAMPLE_CAP))
}

/// Number of seeds per `(kind, m, n)` cell in the acceptance corpus.
pub const SUITE_SEEDS: u64 = 20;
/// Largest degree in the acceptance corpus.
pub const SUITE_MAX_DEGREE: i64 = 5;

/// The full acceptance corpus: every kind over `1 <= m <= n <= 5`, 20 seeds
/// per cell, skipping cells where the kind cannot exist (mixed reducible
/// needs `m >= 3`, chords fix `m = 2`, overloads need `mn >= n + 2`, moved
/// and generic negatives need configurations that are not automatically
/// intersection sets).
pub fn generate_suite() -> Result<Vec<Scenario>, Error> {
    let mut out = Vec::new();
    for m in 1..=SUITE_MAX_DEGREE {
        for n in m..=SUITE_MAX_DEGREE {
            for seed in 0..SUITE_SEEDS {
                let base = gen_line_product(m, n, seed)?;
                out.push(base.clone());
                if m == 2 {
                    out.push(gen_conic_chords(n, seed)?);
                }
                if m >= 3 {
                    out.push(gen_reducible_mixed(m, n, seed)?);
                }
                if moved_point_negative_exists(m, n) {
                    out.push(gen_negative(&base, NegativeKind::MovedPoint, seed)?);
                    out.push(gen_random_generic(m, n, seed)?);
                }
                out.push(gen_negative(&base, NegativeKind::DeletedPoint, seed)?);
                if m * n >= n + 2 {
                    out.push(gen_negative(&base, NegativeKind::CollinearOverload, seed)?);
                }
            }
        }
    }
    Ok(out)
}

/// Stable file name for a scenario inside a corpus directory.
pub fn scenario_file_name(s: &Scenario) -> String {
    format!("{}_m{}_n{}_s{}.json", s.kind.as_str(), s.m, s.n, s.seed)
}

/// One manifest row per scenario, in generation order.
#[derive(Debug, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub kind: ScenarioKind,
    pub m: i64,
    pub n: i64,
    pub seed: u64,
    pub truth: bool,
}

pub fn manifest_for(scenarios: &[Scenario]) -> Vec<ManifestEntry> {
    scenarios
        .iter()
        .map(|s| ManifestEntry {
            file: scenario_file_name(s),
            kind: s.kind,
            m: s.m,
            n: s.n,
            seed: s.seed,
            truth: s.truth,
        })
        .collect()
}
