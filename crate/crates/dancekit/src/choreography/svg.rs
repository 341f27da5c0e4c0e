//! Deterministic SVG layout for braid-closure schedules: the braid drawn
//! as stacked one-crossing layers, axis-aligned closure arcs, dancer
//! segments colored, start dots at the cuts, and wait ticks before
//! cross-dancer over-passages. Output bytes depend only on the input.

use std::fmt::Write;

use crate::braid::closure_trace;
use crate::choreography::DanceSchedule;
use crate::diagram::BraidWord;
use crate::error::ChoreoError;

const MARGIN: f64 = 30.0;
const COL_W: f64 = 60.0;
const ROW_H: f64 = 50.0;
const STUB: f64 = 26.0;
const RAIL_STEP: f64 = 16.0;
const STROKE: f64 = 3.0;
/// Fraction of each half-diagonal kept when drawing the under-strand gap.
const UNDER_TRIM: f64 = 0.62;

const PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#645a9f",
];

struct Layout {
    strands: usize,
    letters: usize,
    rail_zone: f64,
}

impl Layout {
    fn new(strands: usize, letters: usize) -> Layout {
        Layout {
            strands,
            letters,
            rail_zone: RAIL_STEP * strands as f64 + 8.0,
        }
    }

    fn x(&self, pos: usize) -> f64 {
        MARGIN + pos as f64 * COL_W
    }

    fn y_top_end(&self) -> f64 {
        MARGIN + self.rail_zone
    }

    fn y_braid_bot(&self) -> f64 {
        self.y_top_end() + STUB + self.letters as f64 * ROW_H
    }

    fn y_bot_end(&self) -> f64 {
        self.y_braid_bot() + STUB
    }

    /// Bottom edge of letter band k (letters stack bottom to top).
    fn band_bot(&self, k: usize) -> f64 {
        self.y_braid_bot() - k as f64 * ROW_H
    }

    fn band_top(&self, k: usize) -> f64 {
        self.band_bot(k) - ROW_H
    }

    fn rail_x(&self, pos: usize) -> f64 {
        MARGIN + (self.strands - 1) as f64 * COL_W + RAIL_STEP * (self.strands - pos) as f64
    }

    fn rail_y_top(&self, pos: usize) -> f64 {
        self.y_top_end() - RAIL_STEP * (self.strands - pos) as f64
    }

    fn rail_y_bot(&self, pos: usize) -> f64 {
        self.y_bot_end() + RAIL_STEP * (self.strands - pos) as f64
    }

    fn width(&self) -> f64 {
        MARGIN + (self.strands - 1) as f64 * COL_W + RAIL_STEP * self.strands as f64 + MARGIN
    }

    fn height(&self) -> f64 {
        self.y_bot_end() + self.rail_zone + MARGIN
    }
}

fn lerp(a: (f64, f64), b: (f64, f64), t: f64) -> (f64, f64) {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

struct SvgDoc {
    body: String,
}

impl SvgDoc {
    fn new() -> SvgDoc {
        SvgDoc {
            body: String::new(),
        }
    }

    fn line(&mut self, class: &str, color: &str, a: (f64, f64), b: (f64, f64)) {
        if a == b {
            return;
        }
        let _ = writeln!(
            self.body,
            "  <line class=\"{class}\" x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"{color}\"/>",
            a.0, a.1, b.0, b.1
        );
    }

    fn polyline(&mut self, class: &str, color: &str, pts: &[(f64, f64)]) {
        let joined = pts
            .iter()
            .map(|p| format!("{:.1},{:.1}", p.0, p.1))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            self.body,
            "  <polyline class=\"{class}\" points=\"{joined}\" stroke=\"{color}\"/>"
        );
    }

    fn circle(&mut self, class: &str, color: &str, center: (f64, f64), r: f64) {
        let _ = writeln!(
            self.body,
            "  <circle class=\"{class}\" cx=\"{:.1}\" cy=\"{:.1}\" r=\"{r:.1}\" fill=\"{color}\" stroke=\"none\"/>",
            center.0, center.1
        );
    }

    fn finish(self, width: f64, height: f64) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n\
             <g fill=\"none\" stroke-width=\"{STROKE:.1}\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n\
             {body}</g>\n</svg>\n",
            w = width,
            h = height,
            body = self.body
        )
    }
}

pub(super) fn render_braid_svg(
    b: &BraidWord,
    schedule: &DanceSchedule,
) -> Result<String, ChoreoError> {
    let trace = closure_trace(b)?;
    let n = b.strands();
    let c = b.len();
    let layout = Layout::new(n, c);
    let m = trace.seq.len();

    // Dancer per stored event, from the schedule's own segments.
    let mut dancer_of = vec![0usize; m];
    for (d, seg) in schedule.dancers.iter().enumerate() {
        for &e in seg {
            dancer_of[e] = d;
        }
    }
    let color = |d: usize| PALETTE[d % PALETTE.len()];

    // Exit position of each event.
    let exit_of = |e: usize| -> usize {
        let (k, q) = trace.event_letter[e];
        let i = b.letters()[k].unsigned_abs() as usize - 1;
        if q == i {
            i + 1
        } else {
            i
        }
    };

    let mut doc = SvgDoc::new();
    let pass_count = trace.pass_starts.len();
    for j in 0..pass_count {
        let start = trace.pass_starts[j];
        let end = trace.pass_starts.get(j + 1).copied().unwrap_or(m);
        let bottom_pos = trace.pass_bottoms[j];
        let first_dancer = if start < end { dancer_of[start] } else { 0 };

        let mut cur_pos = bottom_pos;
        let mut cur_y = layout.y_bot_end();
        // Bottom stub up to the first crossing (or straight through).
        for e in start..end {
            let (k, q) = trace.event_letter[e];
            debug_assert_eq!(q, cur_pos);
            let d = dancer_of[e];
            let stub_color = if e == start { color(first_dancer) } else { color(d) };
            // Vertical run down from cur_y to this letter's band.
            doc.line(
                "seg",
                stub_color,
                (layout.x(cur_pos), cur_y),
                (layout.x(cur_pos), layout.band_bot(k)),
            );
            let exit = exit_of(e);
            let a = (layout.x(q), layout.band_bot(k));
            let bpt = (layout.x(exit), layout.band_top(k));
            let mid = lerp(a, bpt, 0.5);
            let under = trace.seq.events()[e].role == crate::diagram::Role::Under;
            if under {
                doc.line("under", color(d), a, lerp(a, mid, UNDER_TRIM));
                doc.line(
                    "under",
                    color(d),
                    lerp(mid, bpt, 1.0 - UNDER_TRIM),
                    bpt,
                );
            } else {
                doc.line("over", color(d), a, mid);
                doc.line("over", color(d), mid, bpt);
            }
            cur_pos = exit;
            cur_y = layout.band_top(k);
        }
        // Top stub and the closure arc back to this strand's bottom.
        let last_dancer = if start < end { dancer_of[end - 1] } else { 0 };
        doc.line(
            "seg",
            color(last_dancer),
            (layout.x(cur_pos), cur_y),
            (layout.x(cur_pos), layout.y_top_end()),
        );
        doc.polyline(
            "arc",
            color(last_dancer),
            &[
                (layout.x(cur_pos), layout.y_top_end()),
                (layout.x(cur_pos), layout.rail_y_top(cur_pos)),
                (layout.rail_x(cur_pos), layout.rail_y_top(cur_pos)),
                (layout.rail_x(cur_pos), layout.rail_y_bot(cur_pos)),
                (layout.x(cur_pos), layout.rail_y_bot(cur_pos)),
                (layout.x(cur_pos), layout.y_bot_end()),
            ],
        );
    }

    // Start dots, one per dancer in gap order: at the strand's bottom
    // endpoint when the cut is a pass boundary, otherwise just below the
    // dancer's opening crossing.
    let mut dots = 0;
    for (d, seg) in schedule.dancers.iter().enumerate() {
        let Some(&first_event) = seg.first() else { continue };
        let center = match trace.pass_starts.iter().position(|&s| s == first_event) {
            Some(j) => (layout.x(trace.pass_bottoms[j]), layout.y_bot_end()),
            None => {
                let (k, q) = trace.event_letter[first_event];
                (layout.x(q), layout.band_bot(k))
            }
        };
        doc.circle("start", color(d), center, 5.0);
        dots += 1;
    }
    if dots == 0 {
        // Crossingless closure: single dancer starting at the bottom.
        doc.circle("start", color(0), (layout.x(0), layout.y_bot_end()), 5.0);
    }

    // Wait ticks: perpendicular marks on the incoming half-diagonal.
    for &(d, e) in &schedule.waits {
        let (k, q) = trace.event_letter[e];
        let exit = exit_of(e);
        let a = (layout.x(q), layout.band_bot(k));
        let bpt = (layout.x(exit), layout.band_top(k));
        let mid = lerp(a, bpt, 0.5);
        let tick_at = lerp(a, mid, 0.5);
        let (dx, dy) = (mid.0 - a.0, mid.1 - a.1);
        let len = (dx * dx + dy * dy).sqrt();
        let (px, py) = (-dy / len * 6.0, dx / len * 6.0);
        doc.line(
            "wait",
            color(d),
            (tick_at.0 - px, tick_at.1 - py),
            (tick_at.0 + px, tick_at.1 + py),
        );
    }

    Ok(doc.finish(layout.width(), layout.height()))
}
