//! Schedules: who moves when and who waits where. Turns feasibility
//! witnesses into explicit dance schedules, verifies them independently
//! of the engine's graph machinery, and renders them as text or SVG.

mod svg;

use std::collections::BTreeSet;

use crate::braid::{braid_closure, closure_trace, strand_cuts};
use crate::diagram::{BraidWord, GaussSequence, Role};
use crate::engine::{is_feasible, segments, CutSet, Feasibility};
use crate::error::{BraidError, ChoreoError};

/// A complete schedule: per-dancer segments (stored event indices in path
/// order), a global step number per event, and conservative wait markers.
///
/// A wait marker `(d, e)` means dancer `d` may need to pause before the
/// over-passage `e` until the matching under-passage, danced by someone
/// else, has happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DanceSchedule {
    pub dancers: Vec<Vec<usize>>,
    /// `order[e]` is the global step (0..2c-1) of stored event `e`.
    pub order: Vec<usize>,
    pub waits: BTreeSet<(usize, usize)>,
}

impl DanceSchedule {
    pub fn steps(&self) -> usize {
        self.order.len()
    }

    pub fn dancer_count(&self) -> usize {
        self.dancers.len()
    }
}

/// Wait markers under the fixed placement rule: every over-passage whose
/// under-passage belongs to a different dancer.
fn wait_markers(seq: &GaussSequence, dancers: &[Vec<usize>]) -> BTreeSet<(usize, usize)> {
    let m = seq.len();
    let mut dancer_of = vec![usize::MAX; m];
    for (d, seg) in dancers.iter().enumerate() {
        for &e in seg {
            dancer_of[e] = d;
        }
    }
    let unders = seq.under_positions();
    let mut waits = BTreeSet::new();
    for (e, ev) in seq.events().iter().enumerate() {
        if ev.role == Role::Over {
            let u = unders[(ev.crossing - 1) as usize];
            if dancer_of[u] != dancer_of[e] {
                waits.insert((dancer_of[e], e));
            }
        }
    }
    waits
}

/// Builds the deterministic schedule for a feasible cut set: the engine's
/// witness order (smallest dancer index, then segment position) becomes
/// the global step assignment. Fails with the blame cycle when the cuts
/// are infeasible. The result is self-verified before it is returned.
pub fn schedule_from_cuts(
    seq: &GaussSequence,
    cuts: &CutSet,
) -> Result<DanceSchedule, ChoreoError> {
    let witness = match is_feasible(seq, cuts)? {
        Feasibility::Feasible(w) => w,
        Feasibility::Infeasible(blame) => {
            return Err(ChoreoError::InfeasibleCuts(blame.cycle))
        }
    };
    let dancers = segments(seq, cuts)?;
    let mut order = vec![0usize; seq.len()];
    for (step, &e) in witness.order.iter().enumerate() {
        order[e] = step;
    }
    let waits = wait_markers(seq, &dancers);
    let schedule = DanceSchedule {
        dancers,
        order,
        waits,
    };
    let report = verify_schedule(seq, cuts, &schedule);
    if !report.ok() {
        return Err(ChoreoError::Verification(report.violations.join("; ")));
    }
    Ok(schedule)
}

/// The constructive braid-index choreography: one dancer per strand,
/// letters processed bottom to top, under-passage then over-passage per
/// letter.
pub fn braid_schedule(b: &BraidWord) -> Result<DanceSchedule, ChoreoError> {
    let trace = closure_trace(b)?;
    let seq = &trace.seq;
    let m = seq.len();
    // One dancer per strand pass; passes are contiguous in traversal order.
    let mut dancers = Vec::with_capacity(trace.pass_starts.len());
    for (j, &start) in trace.pass_starts.iter().enumerate() {
        let end = trace
            .pass_starts
            .get(j + 1)
            .copied()
            .unwrap_or(m);
        dancers.push((start..end).collect::<Vec<usize>>());
    }
    let mut order = vec![0usize; m];
    for (k, &(u, o)) in trace.letter_events.iter().enumerate() {
        order[u] = 2 * k;
        order[o] = 2 * k + 1;
    }
    let waits = wait_markers(seq, &dancers);
    let schedule = DanceSchedule {
        dancers,
        order,
        waits,
    };
    let cuts = strand_cuts(b)?;
    let report = verify_schedule(seq, &cuts, &schedule);
    if !report.ok() {
        return Err(ChoreoError::Verification(report.violations.join("; ")));
    }
    Ok(schedule)
}

/// Outcome of an independent schedule check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Independent checker for the schedule contract: segments must match the
/// cut partition, steps must form a permutation, each dancer's steps must
/// increase along its path, and every crossing must be danced under-first.
/// Deliberately avoids the engine's precedence-graph code.
pub fn verify_schedule(seq: &GaussSequence, cuts: &CutSet, s: &DanceSchedule) -> VerifyReport {
    let mut violations = Vec::new();
    let m = seq.len();

    // Re-derive the expected partition with a plain walk of the danced
    // order, switching dancers at each cut.
    let expected = walk_segments(seq, cuts);
    match expected {
        Err(e) => violations.push(format!("invalid cut set: {e}")),
        Ok(expected) => {
            if s.dancers != expected {
                violations.push(format!(
                    "segments differ from cut partition: got {:?}, expected {:?}",
                    s.dancers, expected
                ));
            }
        }
    }

    // Steps are a permutation of 0..2c-1.
    if s.order.len() != m {
        violations.push(format!(
            "order covers {} events, diagram has {m}",
            s.order.len()
        ));
    } else {
        let mut seen = vec![false; m];
        for (&step, e) in s.order.iter().zip(0..) {
            if step >= m || seen[step] {
                violations.push(format!("step {step} of event {e} is not a permutation entry"));
                break;
            }
            seen[step] = true;
        }
    }

    // Strictly increasing along each dancer's path.
    for (d, seg) in s.dancers.iter().enumerate() {
        for w in seg.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a >= m || b >= m {
                violations.push(format!("dancer {d} references an event out of range"));
                break;
            }
            if s.order[a] >= s.order[b] {
                violations.push(format!(
                    "dancer {d} steps backwards: event {a} at step {} before event {b} at step {}",
                    s.order[a], s.order[b]
                ));
            }
        }
    }

    // Under-first at every crossing.
    for x in 1..=seq.crossings() as u32 {
        let mut under = None;
        let mut over = None;
        for (i, ev) in seq.events().iter().enumerate() {
            if ev.crossing == x {
                match ev.role {
                    Role::Under => under = Some(i),
                    Role::Over => over = Some(i),
                }
            }
        }
        let (u, o) = (under.unwrap(), over.unwrap());
        if s.order.len() == m && s.order[u] >= s.order[o] {
            violations.push(format!(
                "crossing {x} danced over-first: under at step {}, over at step {}",
                s.order[u], s.order[o]
            ));
        }
    }

    VerifyReport { violations }
}

/// Plain partition walk used only by the verifier.
fn walk_segments(
    seq: &GaussSequence,
    cuts: &CutSet,
) -> Result<Vec<Vec<usize>>, crate::error::EngineError> {
    use crate::engine::Orientation;

    let m = seq.len();
    if m == 0 {
        if cuts.gaps() != [0] {
            return Err(crate::error::EngineError::DegenerateCutSet);
        }
        return Ok(vec![Vec::new()]);
    }
    for &g in cuts.gaps() {
        if g >= m {
            return Err(crate::error::EngineError::GapOutOfRange { gap: g, events: m });
        }
    }
    // Step p of a full danced cycle: the gap crossed just before the
    // event, and the event's stored index.
    let danced: Vec<(usize, usize)> = (0..m)
        .map(|p| match cuts.orientation() {
            Orientation::Forward => (p, p),
            Orientation::Reverse => {
                let gap = (m - p) % m;
                (gap, (gap + m - 1) % m)
            }
        })
        .collect();
    let first = danced
        .iter()
        .position(|(gap, _)| cuts.gaps().contains(gap))
        .expect("nonempty cut set");
    let mut by_dancer = vec![Vec::new(); cuts.len()];
    let mut current = usize::MAX;
    for k in 0..m {
        let (gap, stored) = danced[(first + k) % m];
        if let Ok(d) = cuts.gaps().binary_search(&gap) {
            current = d;
        }
        by_dancer[current].push(stored);
    }
    Ok(by_dancer)
}

/// Output format for [`render_schedule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Svg,
}

/// What a schedule was computed on. SVG layout is only available when the
/// diagram came from a braid closure.
#[derive(Debug, Clone)]
pub struct ScheduleContext {
    pub seq: GaussSequence,
    pub cuts: CutSet,
    pub braid: Option<BraidWord>,
}

impl ScheduleContext {
    pub fn from_cuts(seq: GaussSequence, cuts: CutSet) -> Self {
        ScheduleContext {
            seq,
            cuts,
            braid: None,
        }
    }

    pub fn for_braid(b: BraidWord) -> Result<Self, BraidError> {
        let seq = braid_closure(&b)?;
        let cuts = strand_cuts(&b)?;
        Ok(ScheduleContext {
            seq,
            cuts,
            braid: Some(b),
        })
    }
}

/// Renders a verified schedule. Text output is a stable per-dancer
/// timeline; SVG output draws the braid closure with colored dancer
/// segments, start dots and wait ticks, and is byte-stable for a fixed
/// input.
pub fn render_schedule(
    ctx: &ScheduleContext,
    s: &DanceSchedule,
    format: RenderFormat,
) -> Result<String, ChoreoError> {
    let report = verify_schedule(&ctx.seq, &ctx.cuts, s);
    if !report.ok() {
        return Err(ChoreoError::Verification(report.violations.join("; ")));
    }
    match format {
        RenderFormat::Text => Ok(render_text(ctx, s)),
        RenderFormat::Svg => match &ctx.braid {
            // The braid layout is drawn with the upward orientation; only
            // Forward cut sets have a geometric reading on it.
            Some(b) if ctx.cuts.orientation() == crate::engine::Orientation::Forward => {
                svg::render_braid_svg(b, s)
            }
            _ => Err(ChoreoError::UnsupportedLayout),
        },
    }
}

fn render_text(ctx: &ScheduleContext, s: &DanceSchedule) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "dancers: {}  steps: {}  cuts: {}",
        s.dancer_count(),
        s.steps(),
        ctx.cuts
    );
    for (d, seg) in s.dancers.iter().enumerate() {
        let gap = ctx.cuts.gaps()[d];
        let _ = write!(out, "D{} @{}:", d + 1, gap);
        for &e in seg {
            let ev = ctx.seq.events()[e];
            let wait = if s.waits.contains(&(d, e)) { "~" } else { "" };
            let _ = write!(out, " {}{}[{}]", wait, ev, s.order[e]);
        }
        out.push('\n');
    }
    out
}
