//! Core representations of knot diagrams: Gauss sequences, PD codes and
//! braid words, plus the structure-preserving transforms between them.
//!
//! A [`GaussSequence`] is the universal representation consumed by the
//! engine: the cyclic list of crossing passages met while traversing the
//! diagram once, each tagged with its [`Role`]. Planar realizability is
//! deliberately not enforced; the danceability model depends only on the
//! cyclic passage order and roles, so abstract (virtual) sequences are
//! accepted everywhere. Census data supplies realizable ones.

use std::fmt;

use crate::error::{BraidError, DiagramError};

/// Which strand of a crossing a passage travels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Under,
    Over,
}

impl Role {
    pub fn toggled(self) -> Role {
        match self {
            Role::Under => Role::Over,
            Role::Over => Role::Under,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Under => write!(f, "U"),
            Role::Over => write!(f, "O"),
        }
    }
}

/// One passage through a crossing: the crossing's label and the strand role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StrandEvent {
    /// 1-based crossing label.
    pub crossing: u32,
    pub role: Role,
}

impl StrandEvent {
    pub fn new(crossing: u32, role: Role) -> Self {
        StrandEvent { crossing, role }
    }
}

impl fmt::Display for StrandEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.role, self.crossing)
    }
}

/// A cyclic sequence of 2c strand events, canonically labeled.
///
/// Invariants enforced by construction:
/// - every crossing label present appears exactly twice, once Under and
///   once Over;
/// - labels are exactly 1..=c in order of first appearance;
/// - c = 0 if and only if the event list is empty (the crossingless
///   unknot diagram).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussSequence {
    events: Vec<StrandEvent>,
}

impl GaussSequence {
    /// Validates roles and canonically relabels the crossings by first
    /// appearance. Input labels may be arbitrary positive integers.
    pub fn new(events: Vec<StrandEvent>) -> Result<Self, DiagramError> {
        use std::collections::HashMap;

        let mut seen: HashMap<u32, (usize, usize)> = HashMap::new(); // label -> (under, over) counts
        for ev in &events {
            if ev.crossing == 0 {
                return Err(DiagramError::ZeroLabel);
            }
            let entry = seen.entry(ev.crossing).or_insert((0, 0));
            match ev.role {
                Role::Under => entry.0 += 1,
                Role::Over => entry.1 += 1,
            }
        }
        for (&label, &(u, o)) in &seen {
            if u != 1 || o != 1 {
                return Err(DiagramError::RoleMismatch(label));
            }
        }

        // Canonical relabeling by first appearance.
        let mut relabel: HashMap<u32, u32> = HashMap::new();
        let mut next = 1u32;
        let events = events
            .into_iter()
            .map(|ev| {
                let label = *relabel.entry(ev.crossing).or_insert_with(|| {
                    let l = next;
                    next += 1;
                    l
                });
                StrandEvent::new(label, ev.role)
            })
            .collect();
        Ok(GaussSequence { events })
    }

    /// The crossingless unknot diagram.
    pub fn empty() -> Self {
        GaussSequence { events: Vec::new() }
    }

    pub fn events(&self) -> &[StrandEvent] {
        &self.events
    }

    /// Number of events, 2c.
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Number of crossings c.
    pub fn crossings(&self) -> usize {
        self.events.len() / 2
    }

    /// Event index of the Under passage of each crossing, indexed by label-1.
    pub fn under_positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.crossings()];
        for (i, ev) in self.events.iter().enumerate() {
            if ev.role == Role::Under {
                pos[(ev.crossing - 1) as usize] = i;
            }
        }
        pos
    }

    /// Event index of the Over passage of each crossing, indexed by label-1.
    pub fn over_positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.crossings()];
        for (i, ev) in self.events.iter().enumerate() {
            if ev.role == Role::Over {
                pos[(ev.crossing - 1) as usize] = i;
            }
        }
        pos
    }

    /// Same event order with every role toggled Under <-> Over.
    pub fn mirror(&self) -> GaussSequence {
        // First-appearance order is unchanged, so labels stay canonical.
        GaussSequence {
            events: self
                .events
                .iter()
                .map(|ev| StrandEvent::new(ev.crossing, ev.role.toggled()))
                .collect(),
        }
    }

    /// Cyclic shift by `k` (event k becomes first), canonically relabeled.
    pub fn rotate(&self, k: i64) -> GaussSequence {
        let m = self.events.len();
        if m == 0 {
            return GaussSequence::empty();
        }
        let shift = k.rem_euclid(m as i64) as usize;
        let events: Vec<StrandEvent> = (0..m)
            .map(|i| self.events[(i + shift) % m])
            .collect();
        GaussSequence::new(events).expect("rotation preserves validity")
    }
}

/// A planar-diagram code: one 4-tuple of edge labels per crossing,
/// listed counterclockwise starting at the incoming under-strand edge.
///
/// Construction checks that every edge label appears exactly twice.
/// Whether the traversal closes into a single component is decided by
/// [`PdCode::to_gauss`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCode {
    tuples: Vec<[u32; 4]>,
}

impl PdCode {
    pub fn new(tuples: Vec<[u32; 4]>) -> Result<Self, DiagramError> {
        use std::collections::HashMap;
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for t in &tuples {
            for &e in t {
                if e == 0 {
                    return Err(DiagramError::ZeroLabel);
                }
                *counts.entry(e).or_insert(0) += 1;
            }
        }
        let mut labels: Vec<u32> = counts.keys().copied().collect();
        labels.sort_unstable();
        for label in labels {
            let count = counts[&label];
            if count != 2 {
                return Err(DiagramError::MalformedPd { label, count });
            }
        }
        Ok(PdCode { tuples })
    }

    pub fn tuples(&self) -> &[[u32; 4]] {
        &self.tuples
    }

    pub fn crossings(&self) -> usize {
        self.tuples.len()
    }

    /// Traverses the diagram from its smallest edge label and returns the
    /// Gauss sequence of the single component, crossings relabeled by
    /// first visit.
    ///
    /// The walk enters a crossing on one of its four edge slots and exits
    /// on the opposite slot. Slots 0 and 2 lie on the under-strand, slots
    /// 1 and 3 on the over-strand, which fixes the role of each passage.
    pub fn to_gauss(&self) -> Result<GaussSequence, DiagramError> {
        use std::collections::HashMap;

        if self.tuples.is_empty() {
            return Ok(GaussSequence::empty());
        }

        // edge label -> the (crossing, slot) pairs where it appears
        let mut occurrences: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (ci, t) in self.tuples.iter().enumerate() {
            for (si, &e) in t.iter().enumerate() {
                occurrences.entry(e).or_default().push((ci, si));
            }
        }

        // Start at the smallest edge label, preferring an under-in slot so
        // that table codes are traversed in their conventional direction.
        let &start_edge = occurrences.keys().min().expect("nonempty PD");
        let occ = &occurrences[&start_edge];
        let start = occ
            .iter()
            .copied()
            .find(|&(_, s)| s == 0)
            .unwrap_or(occ[0]);

        let total_passages = self.tuples.len() * 2;
        let mut visited = vec![[false; 4]; self.tuples.len()];
        let mut events = Vec::with_capacity(total_passages);
        let (mut ci, mut si) = start;
        loop {
            if visited[ci][si] {
                break;
            }
            visited[ci][si] = true;
            let role = if si % 2 == 0 { Role::Under } else { Role::Over };
            events.push(StrandEvent::new(ci as u32 + 1, role));
            // Exit on the opposite slot and hop to the other occurrence of
            // that edge.
            let out_slot = (si + 2) % 4;
            visited[ci][out_slot] = true;
            let out_edge = self.tuples[ci][out_slot];
            let (nci, nsi) = occurrences[&out_edge]
                .iter()
                .copied()
                .find(|&(c, s)| !(c == ci && s == out_slot))
                .ok_or(DiagramError::MalformedPd {
                    label: out_edge,
                    count: 1,
                })?;
            ci = nci;
            si = nsi;
        }

        if events.len() != total_passages {
            // Count remaining components for the error report.
            let mut components = 1;
            loop {
                let next = (0..self.tuples.len())
                    .flat_map(|c| (0..4).map(move |s| (c, s)))
                    .find(|&(c, s)| !visited[c][s]);
                let Some((mut ci, mut si)) = next else { break };
                components += 1;
                loop {
                    if visited[ci][si] {
                        break;
                    }
                    visited[ci][si] = true;
                    let out_slot = (si + 2) % 4;
                    visited[ci][out_slot] = true;
                    let out_edge = self.tuples[ci][out_slot];
                    match occurrences[&out_edge]
                        .iter()
                        .copied()
                        .find(|&(c, s)| !(c == ci && s == out_slot))
                    {
                        Some((nci, nsi)) => {
                            ci = nci;
                            si = nsi;
                        }
                        None => break,
                    }
                }
            }
            return Err(DiagramError::MultipleComponents { components });
        }

        GaussSequence::new(events)
    }

    /// Builds a PD code realizing the given sequence: edges are numbered
    /// 1..=2c along the traversal, each crossing tuple starts at its
    /// incoming under-edge, and the over-strand is laid in at slots 1/3
    /// with its incoming edge at slot 1.
    ///
    /// For abstract (non-planar) sequences the result is still a valid PD
    /// code by this crate's invariants; it simply has no planar drawing.
    pub fn from_gauss(seq: &GaussSequence) -> PdCode {
        let m = seq.len();
        let c = seq.crossings();
        let mut tuples = vec![[0u32; 4]; c];
        for (i, ev) in seq.events().iter().enumerate() {
            let incoming = i as u32 + 1;
            let outgoing = ((i + 1) % m) as u32 + 1;
            let t = &mut tuples[(ev.crossing - 1) as usize];
            match ev.role {
                Role::Under => {
                    t[0] = incoming;
                    t[2] = outgoing;
                }
                Role::Over => {
                    t[1] = incoming;
                    t[3] = outgoing;
                }
            }
        }
        PdCode { tuples }
    }
}

/// A word in the Artin generators of the braid group on `strands` strands.
///
/// Letters are nonzero integers: `i` is the positive generator crossing
/// strands at positions i and i+1, `-i` its inverse. Letters are stored
/// bottom to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &l in &letters {
            let idx = l.unsigned_abs() as usize;
            if l == 0 || idx >= strands {
                return Err(BraidError::IndexOutOfRange {
                    index: l,
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}
