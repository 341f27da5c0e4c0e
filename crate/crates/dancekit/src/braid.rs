//! Braid closures as diagram generators, plus the constructive machinery
//! that realizes the braid-index upper bound.
//!
//! A braid word is read bottom to top, one crossing per letter. Taking the
//! closure joins matching top and bottom endpoints; when the induced
//! permutation is a single n-cycle the closure is a knot and its Gauss
//! sequence is obtained by walking the closure from the bottom of strand 1.

use crate::diagram::{BraidWord, GaussSequence, Role, StrandEvent};
use crate::engine::{CutSet, Orientation};
use crate::error::BraidError;

/// A permutation of strand positions 1..=n, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Image of 1-based position `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] + 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Number of cycles; the closure's component count.
    pub fn cycles(&self) -> usize {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for mut i in 0..n {
            if seen[i] {
                continue;
            }
            cycles += 1;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
            }
        }
        cycles
    }

    pub fn is_full_cycle(&self) -> bool {
        self.cycles() == 1
    }
}

/// The permutation induced on bottom positions by stacking the word's
/// transpositions bottom to top: position p at the bottom exits the braid
/// at position `apply(p)` at the top.
pub fn braid_permutation(b: &BraidWord) -> Permutation {
    let mut perm: Vec<usize> = (0..b.strands()).collect();
    // perm[p] = current position of the strand that started at bottom
    // position p.
    for &letter in b.letters() {
        let i = letter.unsigned_abs() as usize - 1;
        for v in perm.iter_mut() {
            if *v == i {
                *v += 1;
            } else if *v == i + 1 {
                *v -= 1;
            }
        }
    }
    Permutation(perm)
}

/// Traversal bookkeeping shared by the closure, the strand cuts, the
/// proof-order schedule and the SVG layout.
#[derive(Debug, Clone)]
pub(crate) struct ClosureTrace {
    pub seq: GaussSequence,
    /// Event index where each strand pass begins (= gap positions of the
    /// strand cuts), in traversal order of the passes.
    pub pass_starts: Vec<usize>,
    /// Bottom position of each pass, in traversal order of the passes.
    pub pass_bottoms: Vec<usize>,
    /// For each event: (letter index 0-based, position entered at).
    pub event_letter: Vec<(usize, usize)>,
    /// For each letter: (event index of Under passage, of Over passage).
    pub letter_events: Vec<(usize, usize)>,
}

pub(crate) fn closure_trace(b: &BraidWord) -> Result<ClosureTrace, BraidError> {
    let perm = braid_permutation(b);
    let components = perm.cycles();
    if components != 1 {
        return Err(BraidError::NotAKnot { components });
    }
    let n = b.strands();
    let c = b.len();
    let mut events = Vec::with_capacity(2 * c);
    let mut event_letter = Vec::with_capacity(2 * c);
    let mut letter_events = vec![(usize::MAX, usize::MAX); c];
    let mut pass_starts = Vec::with_capacity(n);
    let mut pass_bottoms = Vec::with_capacity(n);
    // Walk the closure from the bottom of strand position 1 (0-based 0),
    // going up through the letters; the closure arc returns each top
    // endpoint to the same bottom position.
    let mut pos = 0usize;
    for _ in 0..n {
        pass_starts.push(events.len());
        pass_bottoms.push(pos);
        for (k, &letter) in b.letters().iter().enumerate() {
            let i = letter.unsigned_abs() as usize - 1;
            if pos == i || pos == i + 1 {
                // Positive letter: the strand entering at position i
                // passes under; negative letters swap roles.
                let role = if (pos == i) == (letter > 0) {
                    Role::Under
                } else {
                    Role::Over
                };
                match role {
                    Role::Under => letter_events[k].0 = events.len(),
                    Role::Over => letter_events[k].1 = events.len(),
                }
                event_letter.push((k, pos));
                events.push(StrandEvent::new(k as u32 + 1, role));
                pos = if pos == i { i + 1 } else { i };
            }
        }
        // Closure arc: top position pos joins bottom position pos.
    }
    debug_assert_eq!(pos, 0, "closure walk must return to its start");
    debug_assert_eq!(events.len(), 2 * c);
    let seq = GaussSequence::new(events).expect("closure walk visits each letter twice");
    Ok(ClosureTrace {
        seq,
        pass_starts,
        pass_bottoms,
        event_letter,
        letter_events,
    })
}

/// Gauss sequence of the braid closure. Fails with `NotAKnot` (reporting
/// the component count) when the permutation is not a single cycle.
pub fn braid_closure(b: &BraidWord) -> Result<GaussSequence, BraidError> {
    Ok(closure_trace(b)?.seq)
}

/// The braid word whose closure is the (2,q) torus knot: q positive
/// crossings on two strands.
pub fn torus_braid(q: u32) -> Result<BraidWord, BraidError> {
    if q < 3 || q % 2 == 0 {
        return Err(BraidError::BadParameter(format!(
            "T(2,q) torus knots require odd q >= 3, got {q}"
        )));
    }
    BraidWord::new(2, vec![1; q as usize])
}

/// Theorem-3 cuts: one dancer per strand, placed at the bottom of the
/// braid, with the upward (Forward) orientation of the closure walk.
pub fn strand_cuts(b: &BraidWord) -> Result<CutSet, BraidError> {
    let trace = closure_trace(b)?;
    if trace.seq.is_empty() {
        return Ok(CutSet::conventional());
    }
    Ok(CutSet::new(Orientation::Forward, trace.pass_starts.iter().copied())
        .expect("pass starts are distinct"))
}
