//! The dance engine: decide n-danceability of a diagram for a given cut
//! set, and compute the exact minimal dancer count for a diagram.
//!
//! A cut set places one dancer per gap between consecutive stored events.
//! Each dancer traverses its segment in the chosen orientation; feasibility
//! asks whether dancer speeds (with pausing allowed) can be chosen so that
//! every crossing is passed on its under-strand first. Since only the
//! relative order of passages matters, this holds exactly when the
//! precedence graph -- segment chains plus one Under(x) -> Over(x) edge per
//! crossing -- is acyclic.

mod search;
pub mod oracle;

use std::fmt;

use crate::diagram::{GaussSequence, Role};
use crate::error::EngineError;

/// Direction of travel relative to the stored event order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Forward,
    Reverse,
}

impl Orientation {
    pub fn letter(self) -> char {
        match self {
            Orientation::Forward => 'F',
            Orientation::Reverse => 'R',
        }
    }
}

/// An orientation choice plus the set of gaps where dancers start.
///
/// Gap `g` denotes the point on the diagram between stored events `g-1`
/// and `g` (cyclically), independent of orientation. Gaps are kept sorted
/// and must be distinct and nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutSet {
    orientation: Orientation,
    gaps: Vec<usize>,
}

impl CutSet {
    pub fn new(
        orientation: Orientation,
        gaps: impl IntoIterator<Item = usize>,
    ) -> Result<Self, EngineError> {
        let mut gaps: Vec<usize> = gaps.into_iter().collect();
        gaps.sort_unstable();
        if gaps.is_empty() {
            return Err(EngineError::EmptyCutSet);
        }
        if let Some(w) = gaps.windows(2).find(|w| w[0] == w[1]) {
            return Err(EngineError::DuplicateGap(w[0]));
        }
        Ok(CutSet { orientation, gaps })
    }

    /// The single valid cut set for the crossingless diagram.
    pub fn conventional() -> Self {
        CutSet {
            orientation: Orientation::Forward,
            gaps: vec![0],
        }
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Sorted, distinct gap positions.
    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for CutSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.orientation.letter())?;
        for (i, g) in self.gaps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Validates a cut set against a sequence: gaps in range, and the
/// crossingless diagram admits only the conventional cut set.
fn validate(seq: &GaussSequence, cuts: &CutSet) -> Result<(), EngineError> {
    let m = seq.len();
    if m == 0 {
        if cuts.gaps() != [0] {
            return Err(EngineError::DegenerateCutSet);
        }
        return Ok(());
    }
    for &g in cuts.gaps() {
        if g >= m {
            return Err(EngineError::GapOutOfRange { gap: g, events: m });
        }
    }
    Ok(())
}

/// The event order actually danced: stored order for Forward, reversed
/// for Reverse, with per-position role and crossing-partner lookups.
pub(crate) struct Traversal {
    /// stored event index at each traversal position
    pub stored: Vec<usize>,
    /// whether the event at each traversal position is an Under passage
    pub under: Vec<bool>,
    /// traversal position of the same crossing's other passage
    pub partner: Vec<usize>,
    orientation: Orientation,
}

impl Traversal {
    pub fn new(seq: &GaussSequence, orientation: Orientation) -> Traversal {
        let m = seq.len();
        let stored: Vec<usize> = match orientation {
            Orientation::Forward => (0..m).collect(),
            Orientation::Reverse => (0..m).rev().collect(),
        };
        let mut pos_of_stored = vec![0usize; m];
        for (p, &s) in stored.iter().enumerate() {
            pos_of_stored[s] = p;
        }
        let mut under = vec![false; m];
        let mut partner = vec![0usize; m];
        let unders = seq.under_positions();
        let overs = seq.over_positions();
        for x in 0..seq.crossings() {
            let pu = pos_of_stored[unders[x]];
            let po = pos_of_stored[overs[x]];
            under[pu] = true;
            partner[pu] = po;
            partner[po] = pu;
        }
        Traversal {
            stored,
            under,
            partner,
            orientation,
        }
    }

    /// Traversal position of the first event danced from the given gap.
    pub fn start_position(&self, gap: usize) -> usize {
        let m = self.stored.len();
        match self.orientation {
            Orientation::Forward => gap,
            Orientation::Reverse => (m - gap) % m,
        }
    }
}

/// Reusable buffers for the per-candidate feasibility check.
#[derive(Default)]
pub(crate) struct Scratch {
    is_start: Vec<bool>,
    indeg: Vec<u8>,
    queue: Vec<u32>,
}

impl Scratch {
    fn resize(&mut self, m: usize) {
        if self.is_start.len() < m {
            self.is_start.resize(m, false);
            self.indeg.resize(m, 0);
        }
        self.queue.clear();
        self.queue.reserve(m);
    }
}

/// Kahn-style acyclicity check over the implicit precedence graph, O(m)
/// per candidate. `starts` holds traversal positions.
pub(crate) fn feasible_starts(trav: &Traversal, starts: &[usize], scratch: &mut Scratch) -> bool {
    let m = trav.stored.len();
    if m == 0 {
        return true;
    }
    scratch.resize(m);
    for &s in starts {
        scratch.is_start[s] = true;
    }
    scratch.queue.clear();
    for p in 0..m {
        let chain_in = !scratch.is_start[p] as u8;
        let crossing_in = !trav.under[p] as u8;
        scratch.indeg[p] = chain_in + crossing_in;
        if scratch.indeg[p] == 0 {
            scratch.queue.push(p as u32);
        }
    }
    let mut head = 0;
    while head < scratch.queue.len() {
        let p = scratch.queue[head] as usize;
        head += 1;
        let next = (p + 1) % m;
        if !scratch.is_start[next] {
            scratch.indeg[next] -= 1;
            if scratch.indeg[next] == 0 {
                scratch.queue.push(next as u32);
            }
        }
        if trav.under[p] {
            let q = trav.partner[p];
            scratch.indeg[q] -= 1;
            if scratch.indeg[q] == 0 {
                scratch.queue.push(q as u32);
            }
        }
    }
    let done = head;
    for &s in starts {
        scratch.is_start[s] = false;
    }
    done == m
}

/// Partitions the danced event order into one contiguous segment per
/// dancer, in ascending gap order. Returns stored event indices.
pub fn segments(seq: &GaussSequence, cuts: &CutSet) -> Result<Vec<Vec<usize>>, EngineError> {
    validate(seq, cuts)?;
    let m = seq.len();
    if m == 0 {
        return Ok(vec![Vec::new()]);
    }
    let trav = Traversal::new(seq, cuts.orientation());
    let starts: Vec<usize> = cuts.gaps().iter().map(|&g| trav.start_position(g)).collect();
    let mut sorted = starts.clone();
    sorted.sort_unstable();
    let mut out = Vec::with_capacity(starts.len());
    for &p in &starts {
        let next = sorted
            .iter()
            .copied()
            .find(|&q| q > p)
            .unwrap_or(sorted[0]);
        let len = if starts.len() == 1 {
            m
        } else {
            (next + m - p) % m
        };
        out.push((0..len).map(|k| trav.stored[(p + k) % m]).collect());
    }
    Ok(out)
}

/// Explicit precedence graph over stored event indices: chain edges within
/// each dancer segment plus one Under(x) -> Over(x) edge per crossing.
#[derive(Debug, Clone)]
pub struct PrecedenceGraph {
    nodes: usize,
    chain_edges: Vec<(usize, usize)>,
    crossing_edges: Vec<(usize, usize)>,
}

impl PrecedenceGraph {
    pub fn build(seq: &GaussSequence, cuts: &CutSet) -> Result<Self, EngineError> {
        let segs = segments(seq, cuts)?;
        let mut chain_edges = Vec::with_capacity(seq.len().saturating_sub(segs.len()));
        for seg in &segs {
            for w in seg.windows(2) {
                chain_edges.push((w[0], w[1]));
            }
        }
        let unders = seq.under_positions();
        let overs = seq.over_positions();
        let crossing_edges = unders.into_iter().zip(overs).collect();
        Ok(PrecedenceGraph {
            nodes: seq.len(),
            chain_edges,
            crossing_edges,
        })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn chain_edges(&self) -> &[(usize, usize)] {
        &self.chain_edges
    }

    pub fn crossing_edges(&self) -> &[(usize, usize)] {
        &self.crossing_edges
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.nodes];
        for &(a, b) in self.chain_edges.iter().chain(&self.crossing_edges) {
            succ[a].push(b);
        }
        succ
    }

    /// Finds a directed cycle, if any, as a list of nodes in edge order.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let succ = self.successors();
        let mut indeg = vec![0usize; self.nodes];
        for list in &succ {
            for &b in list {
                indeg[b] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..self.nodes).filter(|&p| indeg[p] == 0).collect();
        let mut head = 0;
        let mut remaining = self.nodes;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            remaining -= 1;
            for &b in &succ[p] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push(b);
                }
            }
        }
        if remaining == 0 {
            return None;
        }
        // Every remaining node keeps an in-edge from a remaining node;
        // walk predecessors until a repeat closes the cycle.
        let alive: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
        let mut pred = vec![Vec::new(); self.nodes];
        for (a, list) in succ.iter().enumerate() {
            if !alive[a] {
                continue;
            }
            for &b in list {
                if alive[b] {
                    pred[b].push(a);
                }
            }
        }
        let start = (0..self.nodes).find(|&p| alive[p]).expect("remaining node");
        let mut seen = vec![usize::MAX; self.nodes];
        let mut path = vec![start];
        seen[start] = 0;
        loop {
            let cur = *path.last().unwrap();
            let prev = pred[cur][0];
            if seen[prev] != usize::MAX {
                let mut cycle: Vec<usize> = path[seen[prev]..].to_vec();
                cycle.reverse();
                return Some(cycle);
            }
            seen[prev] = path.len();
            path.push(prev);
        }
    }
}

/// A feasible schedule witness: event indices in a valid emission order,
/// produced with the deterministic (dancer index, segment position)
/// tie-break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub order: Vec<usize>,
}

/// An infeasibility certificate: stored event indices forming a directed
/// cycle of the precedence graph, in edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blame {
    pub cycle: Vec<usize>,
}

/// Outcome of a feasibility query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Witness),
    Infeasible(Blame),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Decides whether the cut set makes the diagram danceable, returning a
/// witness order on success and a blame cycle on failure.
pub fn is_feasible(seq: &GaussSequence, cuts: &CutSet) -> Result<Feasibility, EngineError> {
    let segs = segments(seq, cuts)?;
    let m = seq.len();
    let unders = seq.under_positions();
    let mut emitted = vec![false; m];
    let mut pointer = vec![0usize; segs.len()];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let mut progressed = false;
        for (d, seg) in segs.iter().enumerate() {
            if pointer[d] >= seg.len() {
                continue;
            }
            let e = seg[pointer[d]];
            let ev = seq.events()[e];
            let ready = match ev.role {
                Role::Under => true,
                Role::Over => emitted[unders[(ev.crossing - 1) as usize]],
            };
            if ready {
                emitted[e] = true;
                order.push(e);
                pointer[d] += 1;
                progressed = true;
                break;
            }
        }
        if !progressed {
            let graph = PrecedenceGraph::build(seq, cuts)?;
            let cycle = graph
                .find_cycle()
                .expect("stuck emission implies a precedence cycle");
            return Ok(Feasibility::Infeasible(Blame { cycle }));
        }
    }
    Ok(Feasibility::Feasible(Witness { order }))
}

/// Theorem-2 cuts: Forward orientation with one gap immediately before
/// each Under passage, so every dancer opens with its under-passage.
/// Always feasible.
pub fn underpass_cuts(seq: &GaussSequence) -> Result<CutSet, EngineError> {
    if seq.is_empty() {
        return Err(EngineError::EmptyDiagram);
    }
    let gaps = seq
        .events()
        .iter()
        .enumerate()
        .filter(|(_, ev)| ev.role == Role::Under)
        .map(|(i, _)| i);
    CutSet::new(Orientation::Forward, gaps)
}

/// The exact minimum plus a lexicographically smallest witness
/// (Forward before Reverse, then sorted gap tuple).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinDancers {
    pub count: usize,
    pub witness: CutSet,
}

/// Exact minimal dancer count for the diagram, with witness cut set.
///
/// Enumerates cut sizes n = 1, 2, ... and for each size every orientation
/// and gap combination in lexicographic order; Theorem 2's underpass cuts
/// bound the search by the crossing count. With the `parallel` feature the
/// candidates of each (size, orientation) block are checked in parallel,
/// preserving the first-match tie-break.
pub fn min_dancers(seq: &GaussSequence) -> MinDancers {
    #[cfg(feature = "parallel")]
    {
        search::search_min(seq, true)
    }
    #[cfg(not(feature = "parallel"))]
    {
        search::search_min(seq, false)
    }
}

/// Single-threaded variant of [`min_dancers`]; same result, same
/// tie-break.
pub fn min_dancers_sequential(seq: &GaussSequence) -> MinDancers {
    search::search_min(seq, false)
}

/// Explicitly parallel variant of [`min_dancers`].
#[cfg(feature = "parallel")]
pub fn min_dancers_parallel(seq: &GaussSequence) -> MinDancers {
    search::search_min(seq, true)
}

/// Finds a feasible single-dancer cut set if one exists: a gap and
/// orientation from which every under-passage precedes its matching
/// over-passage. Agrees with `min_dancers(seq).count == 1`.
pub fn is_descending_start(seq: &GaussSequence) -> Option<CutSet> {
    if seq.is_empty() {
        return Some(CutSet::conventional());
    }
    let m = seq.len();
    let mut scratch = Scratch::default();
    for orientation in [Orientation::Forward, Orientation::Reverse] {
        let trav = Traversal::new(seq, orientation);
        for gap in 0..m {
            if feasible_starts(&trav, &[trav.start_position(gap)], &mut scratch) {
                return Some(CutSet::new(orientation, [gap]).expect("single gap"));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codecs::parse_gauss;
    use crate::diagram::StrandEvent;

    fn trefoil() -> GaussSequence {
        parse_gauss("O1U2O3U1O2U3").unwrap()
    }

    fn cuts(o: Orientation, gaps: &[usize]) -> CutSet {
        CutSet::new(o, gaps.iter().copied()).unwrap()
    }

    #[test]
    fn segments_trefoil() {
        let segs = segments(&trefoil(), &cuts(Orientation::Forward, &[0, 3])).unwrap();
        assert_eq!(segs, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn segments_single_gap_is_rotation() {
        let segs = segments(&trefoil(), &cuts(Orientation::Forward, &[2])).unwrap();
        assert_eq!(segs, vec![vec![2, 3, 4, 5, 0, 1]]);
    }

    #[test]
    fn segments_two_event_diagram() {
        let seq = parse_gauss("O1U1").unwrap();
        let segs = segments(&seq, &cuts(Orientation::Forward, &[0, 1])).unwrap();
        assert_eq!(segs, vec![vec![0], vec![1]]);
    }

    #[test]
    fn segments_reverse_orientation() {
        let segs = segments(&trefoil(), &cuts(Orientation::Reverse, &[0, 3])).unwrap();
        // Gap 0 starts at stored event 5 and walks down; gap 3 starts at 2.
        assert_eq!(segs, vec![vec![5, 4, 3], vec![2, 1, 0]]);
    }

    #[test]
    fn precedence_graph_edge_counts() {
        let g = PrecedenceGraph::build(&trefoil(), &cuts(Orientation::Forward, &[0, 3])).unwrap();
        assert_eq!(g.chain_edges().len(), 6 - 2);
        assert_eq!(g.crossing_edges().len(), 3);
    }

    #[test]
    fn trefoil_two_cuts_feasible_with_expected_witness() {
        let seq = trefoil();
        let result = is_feasible(&seq, &cuts(Orientation::Forward, &[0, 3])).unwrap();
        match result {
            Feasibility::Feasible(w) => {
                let named: Vec<String> = w
                    .order
                    .iter()
                    .map(|&e| seq.events()[e].to_string())
                    .collect();
                assert_eq!(named, ["U1", "O1", "U2", "O2", "U3", "O3"]);
            }
            Feasibility::Infeasible(_) => panic!("expected feasible"),
        }
    }

    #[test]
    fn trefoil_single_cuts_all_infeasible() {
        let seq = trefoil();
        for orientation in [Orientation::Forward, Orientation::Reverse] {
            for g in 0..6 {
                let r = is_feasible(&seq, &cuts(orientation, &[g])).unwrap();
                assert!(!r.is_feasible(), "{orientation:?} gap {g}");
                if let Feasibility::Infeasible(blame) = r {
                    assert!(blame.cycle.len() >= 2);
                    // The cycle must be a genuine cycle of the graph.
                    let graph =
                        PrecedenceGraph::build(&seq, &cuts(orientation, &[g])).unwrap();
                    let edges: std::collections::HashSet<(usize, usize)> = graph
                        .chain_edges()
                        .iter()
                        .chain(graph.crossing_edges())
                        .copied()
                        .collect();
                    for i in 0..blame.cycle.len() {
                        let a = blame.cycle[i];
                        let b = blame.cycle[(i + 1) % blame.cycle.len()];
                        assert!(edges.contains(&(a, b)), "missing edge {a}->{b}");
                    }
                }
            }
        }
    }

    #[test]
    fn kink_single_cut() {
        let seq = parse_gauss("O1U1").unwrap();
        let r = is_feasible(&seq, &cuts(Orientation::Forward, &[1])).unwrap();
        assert!(r.is_feasible());
        let r = is_feasible(&seq, &cuts(Orientation::Forward, &[0])).unwrap();
        assert!(!r.is_feasible());
    }

    #[test]
    fn underpass_cuts_trefoil() {
        let c = underpass_cuts(&trefoil()).unwrap();
        assert_eq!(c.gaps(), &[1, 3, 5]);
        assert_eq!(c.orientation(), Orientation::Forward);
        assert!(is_feasible(&trefoil(), &c).unwrap().is_feasible());
    }

    #[test]
    fn underpass_cuts_empty_diagram_errors() {
        assert!(underpass_cuts(&GaussSequence::empty()).is_err());
    }

    #[test]
    fn min_dancers_basics() {
        assert_eq!(min_dancers(&GaussSequence::empty()).count, 1);
        let kink = parse_gauss("O1U1").unwrap();
        let r = min_dancers(&kink);
        assert_eq!(r.count, 1);
        assert_eq!(r.witness, cuts(Orientation::Forward, &[1]));
        let r = min_dancers(&trefoil());
        assert_eq!(r.count, 2);
        assert!(is_feasible(&trefoil(), &r.witness).unwrap().is_feasible());
    }

    #[test]
    fn descending_start_cases() {
        let kink = parse_gauss("O1U1").unwrap();
        assert_eq!(
            is_descending_start(&kink),
            Some(cuts(Orientation::Forward, &[1]))
        );
        assert_eq!(is_descending_start(&trefoil()), None);
        let descending = parse_gauss("U1O1U2O2").unwrap();
        assert_eq!(
            is_descending_start(&descending),
            Some(cuts(Orientation::Forward, &[0]))
        );
        assert_eq!(
            is_descending_start(&GaussSequence::empty()),
            Some(CutSet::conventional())
        );
    }

    #[test]
    fn cut_monotonicity_on_trefoil() {
        let seq = trefoil();
        let base = cuts(Orientation::Forward, &[0, 3]);
        assert!(is_feasible(&seq, &base).unwrap().is_feasible());
        for extra in 0..6 {
            if base.gaps().contains(&extra) {
                continue;
            }
            let mut gaps = base.gaps().to_vec();
            gaps.push(extra);
            let bigger = CutSet::new(Orientation::Forward, gaps).unwrap();
            assert!(is_feasible(&seq, &bigger).unwrap().is_feasible());
        }
    }

    #[test]
    fn degenerate_cut_set_validation() {
        let empty = GaussSequence::empty();
        assert!(is_feasible(&empty, &CutSet::conventional())
            .unwrap()
            .is_feasible());
        let bad = cuts(Orientation::Forward, &[1]);
        assert!(matches!(
            is_feasible(&empty, &bad),
            Err(EngineError::DegenerateCutSet)
        ));
        let out = cuts(Orientation::Forward, &[9]);
        let seq = parse_gauss("O1U1").unwrap();
        assert!(matches!(
            is_feasible(&seq, &out),
            Err(EngineError::GapOutOfRange { gap: 9, .. })
        ));
    }

    #[test]
    fn cut_set_rejects_duplicates_and_empty() {
        assert!(CutSet::new(Orientation::Forward, [0, 0]).is_err());
        assert!(CutSet::new(Orientation::Forward, Vec::new()).is_err());
    }

    #[test]
    fn witness_respects_under_first_and_chains() {
        let seq = parse_gauss("U1U2O1O2").unwrap();
        let r = is_feasible(&seq, &cuts(Orientation::Forward, &[0])).unwrap();
        let Feasibility::Feasible(w) = r else {
            panic!("descending sequence must be 1-danceable from gap 0")
        };
        let step_of = |e: usize| w.order.iter().position(|&x| x == e).unwrap();
        // Chain order along the single segment.
        assert!(step_of(0) < step_of(1) && step_of(1) < step_of(2) && step_of(2) < step_of(3));
        // Under before Over per crossing.
        for x in 0..seq.crossings() {
            let u = seq.under_positions()[x];
            let o = seq.over_positions()[x];
            assert!(step_of(u) < step_of(o));
        }
        let _ = StrandEvent::new(1, Role::Under);
    }
}
