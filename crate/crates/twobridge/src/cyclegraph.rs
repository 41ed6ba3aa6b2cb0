//! Incremental paths and cycles: the graded cycle graph of a pair, its
//! segment/block structure, symmetry, Euclidean-style reduction and
//! expansion, and the word map from graded paths into the S-alphabet.

use crate::error::{Error, Result};
use crate::pairs::CoprimePair;
use crate::words::{Letter, SWord};

/// Directed path whose vertex gradings step by exactly +-1 along each edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncrementalPath {
    gradings: Vec<i64>,
}

impl IncrementalPath {
    pub fn new(gradings: Vec<i64>) -> Result<Self> {
        if gradings.is_empty() {
            return Err(Error::NotIncremental);
        }
        if gradings.windows(2).any(|w| (w[1] - w[0]).abs() != 1) {
            return Err(Error::NotIncremental);
        }
        Ok(IncrementalPath { gradings })
    }

    /// Single-vertex path (no edges).
    pub fn vertex(grading: i64) -> Self {
        IncrementalPath { gradings: vec![grading] }
    }

    pub fn gradings(&self) -> &[i64] {
        &self.gradings
    }

    pub fn edge_count(&self) -> usize {
        self.gradings.len() - 1
    }

    pub fn first_grading(&self) -> i64 {
        self.gradings[0]
    }

    pub fn last_grading(&self) -> i64 {
        *self.gradings.last().unwrap()
    }

    pub fn edge_sign(&self, i: usize) -> i64 {
        self.gradings[i + 1] - self.gradings[i]
    }

    pub fn last_edge_sign(&self) -> Option<i64> {
        if self.edge_count() == 0 {
            None
        } else {
            Some(self.edge_sign(self.edge_count() - 1))
        }
    }

    pub fn max_grading(&self) -> i64 {
        *self.gradings.iter().max().unwrap()
    }

    pub fn min_grading(&self) -> i64 {
        *self.gradings.iter().min().unwrap()
    }

    pub fn is_closable(&self) -> bool {
        self.first_grading() == self.last_grading()
    }

    /// Identifies matching end/start vertices.
    pub fn concat(&self, other: &IncrementalPath) -> Result<IncrementalPath> {
        if self.last_grading() != other.first_grading() {
            return Err(Error::GradingMismatch(format!(
                "cannot concatenate: end grading {} vs start grading {}",
                self.last_grading(),
                other.first_grading()
            )));
        }
        let mut gradings = self.gradings.clone();
        gradings.extend_from_slice(&other.gradings[1..]);
        Ok(IncrementalPath { gradings })
    }

    /// n-fold concatenation of a closable path.
    pub fn power(&self, n: u32) -> Result<IncrementalPath> {
        assert!(n >= 1);
        if n > 1 && !self.is_closable() {
            return Err(Error::NotClosable);
        }
        let mut gradings = self.gradings.clone();
        for _ in 1..n {
            gradings.extend_from_slice(&self.gradings[1..]);
        }
        Ok(IncrementalPath { gradings })
    }

    /// Identifies the first and last vertices.
    pub fn close(&self) -> Result<IncrementalCycle> {
        if !self.is_closable() {
            return Err(Error::NotClosable);
        }
        if self.edge_count() == 0 {
            return Err(Error::NotClosable);
        }
        IncrementalCycle::new(self.gradings[..self.gradings.len() - 1].to_vec())
    }

    /// The image under an order-reversing symmetry with grading constant k:
    /// traversal order flips and each grading g becomes k - g.
    pub fn reflect(&self, k: i64) -> IncrementalPath {
        IncrementalPath {
            gradings: self.gradings.iter().rev().map(|g| k - g).collect(),
        }
    }

    /// Shifts every grading by a constant.
    pub fn translate(&self, offset: i64) -> IncrementalPath {
        IncrementalPath {
            gradings: self.gradings.iter().map(|g| g + offset).collect(),
        }
    }
}

/// Directed cycle with gradings stepping by +-1 along every edge, including
/// the wrap-around edge. The length is necessarily even.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncrementalCycle {
    gradings: Vec<i64>,
}

impl IncrementalCycle {
    pub fn new(gradings: Vec<i64>) -> Result<Self> {
        let n = gradings.len();
        if n < 2 || n % 2 != 0 {
            return Err(Error::NotIncremental);
        }
        for i in 0..n {
            if (gradings[(i + 1) % n] - gradings[i]).abs() != 1 {
                return Err(Error::NotIncremental);
            }
        }
        Ok(IncrementalCycle { gradings })
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn gradings(&self) -> &[i64] {
        &self.gradings
    }

    pub fn grading(&self, i: usize) -> i64 {
        self.gradings[i % self.gradings.len()]
    }

    /// Sign of edge i (from vertex i to vertex i+1).
    pub fn edge_sign(&self, i: usize) -> i64 {
        self.grading(i + 1) - self.grading(i)
    }

    pub fn max_grading(&self) -> i64 {
        *self.gradings.iter().max().unwrap()
    }

    pub fn min_grading(&self) -> i64 {
        *self.gradings.iter().min().unwrap()
    }

    /// Vertices of maximal grading.
    pub fn summits(&self) -> Vec<usize> {
        let m = self.max_grading();
        (0..self.len()).filter(|&i| self.gradings[i] == m).collect()
    }

    /// Vertices of minimal grading.
    pub fn bottoms(&self) -> Vec<usize> {
        let m = self.min_grading();
        (0..self.len()).filter(|&i| self.gradings[i] == m).collect()
    }

    /// The closable path obtained by cutting at the given vertex.
    pub fn cut(&self, at: usize) -> IncrementalPath {
        let n = self.len();
        let mut gradings = Vec::with_capacity(n + 1);
        for i in 0..=n {
            gradings.push(self.grading(at + i));
        }
        IncrementalPath { gradings }
    }

    /// The path along the arc starting at `arc.start` spanning `arc.edges`
    /// edges (up to a full revolution).
    pub fn arc_path(&self, arc: Arc) -> IncrementalPath {
        assert!(arc.edges <= self.len(), "arc longer than cycle");
        let mut gradings = Vec::with_capacity(arc.edges + 1);
        for i in 0..=arc.edges {
            gradings.push(self.grading(arc.start + i));
        }
        IncrementalPath { gradings }
    }

    /// Complementary arc: removes the edges and interior vertices of the
    /// given arc, keeping its endpoints. Subtracting a full revolution leaves
    /// a single vertex.
    pub fn subtract(&self, arc: Arc) -> Result<IncrementalPath> {
        if arc.edges > self.len() {
            return Err(Error::NotAnArc);
        }
        Ok(self.arc_path(Arc {
            start: (arc.start + arc.edges) % self.len(),
            edges: self.len() - arc.edges,
        }))
    }

    /// Start indices at which the given path occurs as an arc of this cycle.
    pub fn find_arc(&self, path: &IncrementalPath) -> Vec<usize> {
        if path.edge_count() > self.len() {
            return Vec::new();
        }
        (0..self.len())
            .filter(|&s| {
                path.gradings()
                    .iter()
                    .enumerate()
                    .all(|(i, &g)| self.grading(s + i) == g)
            })
            .collect()
    }

    /// Removes a subgraph given as a path; it must occur as an arc.
    pub fn graph_subtract(&self, sub: &IncrementalPath) -> Result<IncrementalPath> {
        let starts = self.find_arc(sub);
        let &start = starts.first().ok_or(Error::NotAnArc)?;
        self.subtract(Arc { start, edges: sub.edge_count() })
    }

    /// Graded graph isomorphism; for directed cycles this is rotation.
    pub fn isomorphic(&self, other: &IncrementalCycle) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        (0..n).any(|r| (0..n).all(|i| self.grading(i + r) == other.gradings[i]))
    }

    /// Rotation plus a constant grading offset making the cycles equal:
    /// returns (r, offset) with other[i] = self[i + r] + offset.
    pub fn relative_match(&self, other: &IncrementalCycle) -> Option<(usize, i64)> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        for r in 0..n {
            let offset = other.gradings[0] - self.grading(r);
            if (1..n).all(|i| other.gradings[i] == self.grading(i + r) + offset) {
                return Some((r, offset));
            }
        }
        None
    }

    pub fn relatively_isomorphic(&self, other: &IncrementalCycle) -> bool {
        self.relative_match(other).is_some()
    }

    /// Order-reversing self-map with constant grading sum, if one exists.
    pub fn symmetry(&self) -> Option<Symmetry> {
        let n = self.len();
        for axis in 0..n {
            let k = self.gradings[0] + self.grading(axis);
            if (1..n).all(|i| self.gradings[i] + self.grading(axis + n - i) == k) {
                return Some(Symmetry { axis, constant: k });
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry().is_some()
    }
}

/// A contiguous run of `edges` edges starting at vertex `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub start: usize,
    pub edges: usize,
}

/// Witness for cycle symmetry: the vertex map i -> axis - i and the constant
/// value of gr(P) + gr(phi(P)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symmetry {
    pub axis: usize,
    pub constant: i64,
}

/// Cycle graph of a pair: 2p vertices graded by the sigma prefix sums.
pub fn build_cycle(pair: &CoprimePair) -> IncrementalCycle {
    let sigma = pair.sigma_table();
    IncrementalCycle::new(sigma[..sigma.len() - 1].to_vec())
        .expect("sigma sequence is incremental and closes up")
}

/// Maximal run of same-sign edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub sign: i64,
    pub len: usize,
    pub start_edge: usize,
}

/// The decomposition of a cycle into segments of alternating sign, listed in
/// cyclic order starting with the segment containing edge 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentDecomposition {
    pub segments: Vec<Segment>,
    /// Index (into `segments`) of the segment containing edge 0.
    pub lambda0: usize,
}

impl SegmentDecomposition {
    pub fn count(&self) -> usize {
        self.segments.len()
    }

    pub fn long_len(&self) -> usize {
        self.segments.iter().map(|s| s.len).max().unwrap()
    }

    pub fn short_len(&self) -> usize {
        self.segments.iter().map(|s| s.len).min().unwrap()
    }

    pub fn count_of_len(&self, len: usize) -> usize {
        self.segments.iter().filter(|s| s.len == len).count()
    }
}

pub fn segments(cycle: &IncrementalCycle) -> SegmentDecomposition {
    let n = cycle.len();
    let sign = |i: usize| cycle.edge_sign(i);
    let starts: Vec<usize> = (0..n)
        .filter(|&i| sign(i) != sign((i + n - 1) % n))
        .collect();
    assert!(!starts.is_empty(), "a closed incremental cycle changes direction");
    let count = starts.len();
    let mut segs = Vec::with_capacity(count);
    for k in 0..count {
        let start = starts[k];
        let end = starts[(k + 1) % count];
        let len = if end > start { end - start } else { end + n - start };
        segs.push(Segment { sign: sign(start), len, start_edge: start });
    }
    // rotate so the segment containing edge 0 comes first
    let at = segs
        .iter()
        .position(|s| (n - s.start_edge) % n < s.len || s.start_edge == 0)
        .expect("edge 0 lies in some segment");
    segs.rotate_left(at);
    SegmentDecomposition { segments: segs, lambda0: 0 }
}

/// Maximal run of consecutive segments of equal length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub segment_len: usize,
    /// Number of segments in the block.
    pub len: usize,
    /// Index into the decomposition of the first segment of the block.
    pub start_segment: usize,
}

pub fn blocks(dec: &SegmentDecomposition) -> Vec<Block> {
    let n = dec.segments.len();
    let len = |i: usize| dec.segments[i % n].len;
    let starts: Vec<usize> = (0..n).filter(|&i| len(i) != len(i + n - 1)).collect();
    if starts.is_empty() {
        return vec![Block { segment_len: len(0), len: n, start_segment: 0 }];
    }
    let count = starts.len();
    (0..count)
        .map(|k| {
            let start = starts[k];
            let end = starts[(k + 1) % count];
            let blen = if end > start { end - start } else { end + n - start };
            Block { segment_len: len(start), len: blen, start_segment: start }
        })
        .collect()
}

/// Euclidean data of a canonical pair with q > 1: p = kappa*q + xi with
/// 0 < xi < q, and when xi > 1 also q = kappa'*xi + xi' with 0 < xi' < xi.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EuclidData {
    pub kappa: i64,
    pub xi: i64,
    pub kappa_prime: Option<i64>,
    pub xi_prime: Option<i64>,
}

pub fn euclid_data(pair: &CoprimePair) -> Result<EuclidData> {
    let (p, q) = (pair.p(), pair.q());
    if q <= 1 {
        return Err(Error::BaseCase(format!("q = {q} admits no segment split")));
    }
    let kappa = p / q;
    let xi = p % q;
    debug_assert!(xi > 0, "coprime pair has nonzero remainder");
    let (kp, xp) = if xi > 1 {
        (Some(q / xi), Some(q % xi))
    } else {
        (None, None)
    };
    Ok(EuclidData { kappa, xi, kappa_prime: kp, xi_prime: xp })
}

/// One application of the cycle-graph reduction to a smaller pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionStep {
    pub source: CoprimePair,
    pub target: CoprimePair,
    pub kappa: i64,
    pub xi: i64,
    pub kappa_prime: i64,
    pub xi_prime: i64,
}

/// Reduces (p, q) with q > 1 and xi > 1 to the smaller pair
/// (xi, xi') or (xi, xi' - xi) according to the parity of kappa'.
pub fn reduce(pair: &CoprimePair) -> Result<ReductionStep> {
    let ed = euclid_data(pair)?;
    let (Some(kp), Some(xp)) = (ed.kappa_prime, ed.xi_prime) else {
        return Err(Error::BaseCase(format!("{pair} has xi = 1")));
    };
    let p_star = ed.xi;
    let q_star = if kp % 2 == 0 { xp } else { xp - ed.xi };
    let target = CoprimePair::normalize(p_star, q_star)?;
    debug_assert_eq!(target.q(), q_star, "reduced pair is already canonical");
    Ok(ReductionStep {
        source: *pair,
        target,
        kappa: ed.kappa,
        xi: ed.xi,
        kappa_prime: kp,
        xi_prime: xp,
    })
}

/// The graph-level reduction: delete all short segments, collapse each long
/// segment to a single edge of the same sign, and grade so the vertex before
/// the image of the segment containing edge 0 sits at zero.
pub fn literal_reduce(cycle: &IncrementalCycle) -> Result<IncrementalCycle> {
    let dec = segments(cycle);
    let long = dec.long_len();
    let short = dec.short_len();
    if long == short {
        return Err(Error::Reduce("all segments have the same length".into()));
    }
    if long != short + 1 {
        return Err(Error::Reduce(format!(
            "segment lengths {short} and {long} are not adjacent"
        )));
    }
    if dec.segments[dec.lambda0].len != long {
        return Err(Error::Reduce("the segment at edge 0 is not long".into()));
    }
    let signs: Vec<i64> = dec
        .segments
        .iter()
        .filter(|s| s.len == long)
        .map(|s| s.sign)
        .collect();
    if signs.iter().sum::<i64>() != 0 {
        return Err(Error::Reduce("long-segment signs do not balance".into()));
    }
    let mut gradings = Vec::with_capacity(signs.len());
    let mut g = 0;
    for &s in &signs {
        gradings.push(g);
        g += s;
    }
    IncrementalCycle::new(gradings)
}

/// The rotation q' in (0, 2p) with q'* q = p - 1 (mod 2p); the sign sequence
/// of (p, -q) is the sign sequence of (p, q) shifted by q'.
pub fn negate_shift(pair: &CoprimePair) -> i64 {
    let (p, q) = (pair.p(), pair.q());
    let m = 2 * p;
    for qp in 1..m {
        if (qp * q - (p - 1)).rem_euclid(m) == 0 {
            return qp;
        }
    }
    unreachable!("q is invertible mod 2p");
}

fn block_len(prev_sign: i64, next_sign: i64, b: usize) -> usize {
    // odd when the flanking signs agree, even otherwise
    let want_odd = prev_sign == next_sign;
    if (b % 2 == 1) == want_odd {
        b
    } else {
        b - 1
    }
}

/// Expansion of a path: each edge becomes an (s+1)-segment of the same sign,
/// with s-blocks of length b or b-1 interleaved (and one prepended) so that
/// consecutive segments alternate. The start grading depends on the virtual
/// preceding sign e.
pub fn expand_path(path: &IncrementalPath, s: usize, b: usize, e: i64) -> IncrementalPath {
    let (p, _) = expand_path_marked(path, s, b, e);
    p
}

/// As `expand_path`, also returning the vertex indices of the ends of the
/// long segments (the images of the original vertices 1..n).
pub fn expand_path_marked(
    path: &IncrementalPath,
    s: usize,
    b: usize,
    e: i64,
) -> (IncrementalPath, Vec<usize>) {
    assert!(s >= 1 && b >= 1 && (e == 1 || e == -1));
    assert!(path.edge_count() >= 1, "expansion needs at least one edge");
    let n = path.edge_count();

    // (sign, length-in-edges) runs: prepended block, then long segments with
    // blocks between them
    let mut runs: Vec<(i64, usize)> = Vec::new();
    let push_block = |runs: &mut Vec<(i64, usize)>, prev: i64, next: i64| {
        let count = block_len(prev, next, b);
        let mut sign = -prev;
        for _ in 0..count {
            runs.push((sign, s));
            sign = -sign;
        }
    };
    push_block(&mut runs, e, path.edge_sign(0));
    let mut marks = Vec::with_capacity(n);
    for i in 0..n {
        runs.push((path.edge_sign(i), s + 1));
        if i + 1 < n {
            push_block(&mut runs, path.edge_sign(i), path.edge_sign(i + 1));
        }
    }

    // Start grading: raised by s exactly when the virtual preceding sign is
    // positive. This is the unique pin compatible with the concatenation law
    // and with the reduction round trip on both signs of the reduced pair.
    let start = if e == 1 {
        path.first_grading() + s as i64
    } else {
        path.first_grading()
    };

    let mut gradings = vec![start];
    let mut long_seen = 0usize;
    for &(sign, len) in &runs {
        for _ in 0..len {
            gradings.push(gradings.last().unwrap() + sign);
        }
        if len == s + 1 {
            long_seen += 1;
            if long_seen <= n {
                marks.push(gradings.len() - 1);
            }
        }
    }
    (IncrementalPath { gradings }, marks)
}

/// Expansion of a cycle, well defined up to cycle isomorphism: cut anywhere,
/// expand with e the sign of the final edge, and close up.
pub fn expand_cycle(cycle: &IncrementalCycle, s: usize, b: usize) -> Result<IncrementalCycle> {
    let path = cycle.cut(0);
    let e = path.last_edge_sign().expect("cycle has edges");
    expand_path(&path, s, b, e).close()
}

/// The word of a graded path: every edge whose tail grading is odd
/// contributes one letter, with exponent the edge sign and subscript the
/// smaller of the two endpoint gradings.
pub fn rho(path: &IncrementalPath) -> SWord {
    let mut letters = Vec::new();
    for i in 0..path.edge_count() {
        let tail = path.gradings()[i];
        if tail.rem_euclid(2) == 1 {
            let head = path.gradings()[i + 1];
            letters.push(Letter::new(tail.min(head), (head - tail) as i8));
        }
    }
    SWord::from_letters(letters)
}

/// Steps taken while simplifying a pair down to a base case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainStep {
    Reduce(ReductionStep),
    /// Passage from (p, q) to (p, -q) via the relative isomorphism of their
    /// cycle graphs; `shift` is the rotation.
    Negate { from: CoprimePair, to: CoprimePair, shift: i64 },
}

impl ChainStep {
    pub fn target(&self) -> CoprimePair {
        match self {
            ChainStep::Reduce(r) => r.target,
            ChainStep::Negate { to, .. } => *to,
        }
    }
}

/// Is this pair a terminal node of the reduction: q = 1 or p mod q = 1
/// (after making q positive)?
pub fn is_base_pair(pair: &CoprimePair) -> bool {
    let q = pair.q().abs();
    q == 1 || pair.p() % q == 1
}

/// Repeatedly negate (when q < 0) and reduce until a base pair is reached.
pub fn reduce_chain(pair: &CoprimePair) -> Result<(Vec<ChainStep>, CoprimePair)> {
    let mut steps = Vec::new();
    let mut cur = *pair;
    loop {
        if cur.q() < 0 {
            let to = cur.mirror();
            steps.push(ChainStep::Negate { from: cur, to, shift: negate_shift(&cur) });
            cur = to;
            continue;
        }
        if is_base_pair(&cur) {
            return Ok((steps, cur));
        }
        let step = reduce(&cur)?;
        cur = step.target;
        steps.push(ChainStep::Reduce(step));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::canonical_pairs;
    use crate::presentation::rewrite_r0;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn pair(p: i64, q: i64) -> CoprimePair {
        CoprimePair::normalize(p, q).unwrap()
    }

    fn cyc(g: &[i64]) -> IncrementalCycle {
        IncrementalCycle::new(g.to_vec()).unwrap()
    }

    fn path(g: &[i64]) -> IncrementalPath {
        IncrementalPath::new(g.to_vec()).unwrap()
    }

    #[test]
    fn build_cycle_basics() {
        let c = build_cycle(&pair(3, 1));
        assert_eq!(c.gradings(), &[0, 1, 2, 3, 2, 1]);
        for a in canonical_pairs(50, true) {
            assert_eq!(build_cycle(&a).len(), 2 * a.p() as usize, "{a}");
        }
    }

    #[test]
    fn segment_structure_33_23() {
        let c = build_cycle(&pair(33, 23));
        let dec = segments(&c);
        assert_eq!(dec.count(), 46);
        assert_eq!(dec.count_of_len(2), 20);
        assert_eq!(dec.segments[dec.lambda0].len, 2);
        assert_eq!(dec.segments[dec.lambda0].sign, 1);
    }

    #[test]
    fn segment_structure_small_figures() {
        // one positive 3-segment and one negative 3-segment
        let dec31 = segments(&build_cycle(&pair(3, 1)));
        assert_eq!(dec31.count(), 2);
        assert!(dec31.segments.iter().all(|s| s.len == 3));
        // (3,2,3,2)-ish alternation with two long segments
        let dec73 = segments(&build_cycle(&pair(7, 3)));
        assert_eq!(dec73.count(), 6);
        assert_eq!(dec73.count_of_len(3), 2);
        assert_eq!(dec73.count_of_len(2), 4);
    }

    #[test]
    fn segment_starts_match_modular_rule() {
        for a in canonical_pairs(120, false) {
            if a.q() <= 1 {
                continue;
            }
            let (p, q) = (a.p(), a.q());
            let xi = p % q;
            let c = build_cycle(&a);
            let dec = segments(&c);
            let is_start: Vec<bool> = {
                let mut v = vec![false; 2 * p as usize];
                for s in &dec.segments {
                    v[s.start_edge] = true;
                }
                v
            };
            for i in 0..2 * p {
                let m = (i * q).rem_euclid(p);
                assert_eq!(is_start[i as usize], m < q, "{a} vertex {i}");
            }
            for s in &dec.segments {
                let m = (s.start_edge as i64 * q).rem_euclid(p);
                if m < xi {
                    assert_eq!(s.len as i64, p / q + 1, "{a} long at {}", s.start_edge);
                } else {
                    assert_eq!(s.len as i64, p / q, "{a} short at {}", s.start_edge);
                }
            }
        }
    }

    #[test]
    fn long_segment_starts_17_5() {
        let dec = segments(&build_cycle(&pair(17, 5)));
        let starts: Vec<usize> = dec
            .segments
            .iter()
            .filter(|s| s.len == dec.long_len())
            .map(|s| s.start_edge)
            .collect();
        assert_eq!(starts, vec![0, 7, 17, 24]);
    }

    #[test]
    fn block_structure() {
        for a in canonical_pairs(160, false) {
            let Ok(ed) = euclid_data(&a) else { continue };
            let (Some(kp), _) = (ed.kappa_prime, ed.xi_prime) else { continue };
            let dec = segments(&build_cycle(&a));
            let bl = blocks(&dec);
            for b in &bl {
                if b.segment_len == ed.kappa as usize {
                    assert!(
                        b.len == kp as usize || b.len == kp as usize - 1,
                        "{a}: kappa-block of length {}",
                        b.len
                    );
                    if kp == 1 {
                        assert_eq!(b.len, 1, "{a}: kappa-blocks isolated when kappa'=1");
                    }
                } else if kp >= 2 {
                    assert_eq!(b.len, 1, "{a}: long blocks isolated when kappa'>=2");
                }
            }
        }
    }

    #[test]
    fn summit_counts() {
        assert_eq!(build_cycle(&pair(3, 1)).summits().len(), 1);
        assert_eq!(build_cycle(&pair(7, 3)).summits().len(), 2);
        for a in canonical_pairs(100, false) {
            let q = a.q();
            if q > 1 && a.p() % q == 1 {
                assert_eq!(
                    build_cycle(&a).summits().len() as i64,
                    (q + 1) / 2,
                    "{a}"
                );
            }
        }
    }

    #[test]
    fn summit_and_bottom_gradings_match_subscript_bounds() {
        for a in canonical_pairs(120, true) {
            let c = build_cycle(&a);
            let r0 = rewrite_r0(&a);
            let (m, big_m) = (r0.min_subscript().unwrap(), r0.max_subscript().unwrap());
            assert_eq!(c.max_grading(), big_m + 1, "{a}");
            assert_eq!(c.min_grading(), m, "{a}");
        }
    }

    #[test]
    fn symmetry_of_pair_cycles() {
        for a in canonical_pairs(100, true) {
            let c = build_cycle(&a);
            let sym = c.symmetry().unwrap_or_else(|| panic!("{a} not symmetric"));
            assert_eq!(sym.constant, c.min_grading() + c.max_grading());
        }
        // palindrome 4-cycle
        let c = cyc(&[0, 1, 2, 1]);
        assert_eq!(c.symmetry().unwrap().constant, 2);
        // 10-vertex symmetric example
        assert!(cyc(&[0, 1, 2, 1, 2, 3, 2, 1, 1 + 1, 1]).is_symmetric());
    }

    #[test]
    fn asymmetric_cycle_detected() {
        // two summits at different "widths": 0,1,2,3,2,1,2,1,0,1 has
        // gradings summing inconsistently under any reflection
        let c = cyc(&[0, 1, 2, 3, 2, 1, 2, 1, 0, 1]);
        assert!(c.symmetry().is_none());
    }

    #[test]
    fn reduce_golden() {
        let r = reduce(&pair(33, 23)).unwrap();
        assert_eq!((r.target.p(), r.target.q()), (10, 3));
        let r = reduce(&pair(119, 43)).unwrap();
        assert_eq!((r.target.p(), r.target.q()), (33, -23));
        let r = reduce(&pair(26, 11)).unwrap();
        assert_eq!((r.target.p(), r.target.q()), (4, 3));
        assert!(matches!(reduce(&pair(7, 3)), Err(Error::BaseCase(_))));
        assert!(matches!(reduce(&pair(5, 1)), Err(Error::BaseCase(_))));
    }

    #[test]
    fn literal_reduce_matches_target_cycle() {
        for (p, q) in [(33, 23), (26, 11), (119, 43), (17, 13)] {
            let a = pair(p, q);
            let r = reduce(&a).unwrap();
            let reduced = literal_reduce(&build_cycle(&a)).unwrap();
            let target = build_cycle(&r.target);
            assert!(reduced.isomorphic(&target), "{a} -> {}", r.target);
        }
    }

    #[test]
    fn negate_shift_identity() {
        for a in canonical_pairs(60, false) {
            let qp = negate_shift(&a);
            let neg = a.mirror();
            for i in 0..2 * a.p() {
                assert_eq!(neg.epsilon(i), a.epsilon(i + qp), "{a} at {i}");
            }
        }
        assert_eq!(negate_shift(&pair(3, 1)), 2);
    }

    #[test]
    fn negate_gives_relative_isomorphism() {
        for a in canonical_pairs(100, false) {
            let c = build_cycle(&a);
            let n = build_cycle(&a.mirror());
            let (r, _) = c
                .relative_match(&n)
                .unwrap_or_else(|| panic!("{a} not relatively isomorphic to mirror"));
            assert_eq!(r as i64, negate_shift(&a) % (2 * a.p()), "{a}");
        }
    }

    #[test]
    fn expand_small_hand_case() {
        // single up-down closed path expanded with s = 1, b = 1
        let p = path(&[0, 1, 0]);
        let e = p.last_edge_sign().unwrap();
        let out = expand_path(&p, 1, 1, e);
        assert_eq!(out.gradings(), &[0, 1, 2, 1, 0]);
    }

    #[test]
    fn expand_grading_deltas() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..8);
            let mut g = vec![rng.gen_range(-3i64..=3)];
            for _ in 0..n {
                let step = if rng.gen() { 1 } else { -1 };
                g.push(g.last().unwrap() + step);
            }
            let p = IncrementalPath::new(g).unwrap();
            let s = rng.gen_range(1..4usize);
            let b = rng.gen_range(1..4usize);
            let e = if rng.gen() { 1 } else { -1 };
            let (out, marks) = expand_path_marked(&p, s, b, e);
            assert_eq!(marks.len(), p.edge_count());
            for (i, &mark) in marks.iter().enumerate() {
                let q_delta = out.gradings()[mark] - out.first_grading();
                let p_delta = p.gradings()[i + 1] - p.first_grading();
                let seg_sign = p.edge_sign(i);
                let expect = if seg_sign == e {
                    p_delta
                } else if seg_sign == 1 {
                    p_delta + s as i64
                } else {
                    p_delta - s as i64
                };
                assert_eq!(q_delta, expect);
            }
        }
    }

    #[test]
    fn expand_concat_law() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..200 {
            let mut g = vec![rng.gen_range(-2i64..=2)];
            for _ in 0..rng.gen_range(1..6) {
                g.push(g.last().unwrap() + if rng.gen() { 1 } else { -1 });
            }
            let mut h = vec![*g.last().unwrap()];
            for _ in 0..rng.gen_range(1..6) {
                h.push(h.last().unwrap() + if rng.gen() { 1 } else { -1 });
            }
            let a = IncrementalPath::new(g).unwrap();
            let bpath = IncrementalPath::new(h).unwrap();
            let s = rng.gen_range(1..4usize);
            let bb = rng.gen_range(1..4usize);
            let e = if rng.gen() { 1 } else { -1 };
            let whole = expand_path(&a.concat(&bpath).unwrap(), s, bb, e);
            let left = expand_path(&a, s, bb, e);
            let right = expand_path(&bpath, s, bb, a.last_edge_sign().unwrap());
            assert_eq!(whole, left.concat(&right).unwrap());
        }
    }

    #[test]
    fn reduce_then_expand_roundtrip_samples() {
        for (p, q) in [(33, 23), (26, 11), (119, 43), (17, 13), (25, 7)] {
            let a = pair(p, q);
            let ed = euclid_data(&a).unwrap();
            let kp = ed.kappa_prime.unwrap();
            let reduced = literal_reduce(&build_cycle(&a)).unwrap();
            let back = expand_cycle(&reduced, ed.kappa as usize, kp as usize).unwrap();
            assert!(back.isomorphic(&build_cycle(&a)), "{a}");
        }
    }

    #[test]
    fn expand_of_4_3_gives_26_11() {
        let back = expand_cycle(&build_cycle(&pair(4, 3)), 2, 2).unwrap();
        assert!(back.isomorphic(&build_cycle(&pair(26, 11))));
    }

    #[test]
    fn leading_vertex_gradings_track_reduction() {
        // The end of each long segment maps to the head of the matching edge
        // in the reduced cycle; grading differences agree on the nose between
        // two peaks or two valleys, and shift by +-kappa across a peak/valley
        // mismatch.
        for a in canonical_pairs(80, false) {
            let Ok(red) = reduce(&a) else { continue };
            let kappa = red.kappa;
            let c = build_cycle(&a);
            let dec = segments(&c);
            let long = dec.long_len();
            let reduced = literal_reduce(&c).unwrap();
            let leads: Vec<(i64, i64, i64)> = dec
                .segments
                .iter()
                .filter(|s| s.len == long)
                .enumerate()
                .map(|(j, s)| {
                    let end = (s.start_edge + s.len) % c.len();
                    // image vertex: head of edge j in the reduced cycle
                    (c.grading(end), reduced.grading(j + 1), s.sign)
                })
                .collect();
            for (g_p, f_p, sign_p) in &leads {
                for (g_q, f_q, sign_q) in &leads {
                    let lhs = f_p - f_q;
                    let rhs = g_p - g_q;
                    let expected = match (sign_p, sign_q) {
                        _ if sign_p == sign_q => rhs,
                        // p ends a negative segment: a valley
                        (-1, 1) => rhs + kappa,
                        _ => rhs - kappa,
                    };
                    assert_eq!(lhs, expected, "{a}");
                }
            }
        }
    }

    #[test]
    fn rho_reproduces_relator() {
        for a in canonical_pairs(120, true) {
            let c = build_cycle(&a);
            assert_eq!(rho(&c.cut(0)), rewrite_r0(&a), "{a}");
        }
    }

    #[test]
    fn rho_trivial_and_homomorphism() {
        assert!(rho(&path(&[0, 1])).is_empty());
        assert!(rho(&path(&[2, 3])).is_empty());
        assert_eq!(rho(&path(&[1, 2])).to_string(), "S_1");
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..200 {
            let mut g = vec![rng.gen_range(-4i64..=4)];
            for _ in 0..rng.gen_range(2..20) {
                g.push(g.last().unwrap() + if rng.gen() { 1 } else { -1 });
            }
            let p = IncrementalPath::new(g.clone()).unwrap();
            let cutpos = rng.gen_range(1..g.len() - 1);
            let left = IncrementalPath::new(g[..=cutpos].to_vec()).unwrap();
            let right = IncrementalPath::new(g[cutpos..].to_vec()).unwrap();
            assert_eq!(rho(&p), rho(&left).concat(&rho(&right)));
        }
    }

    #[test]
    fn rho_conjugate_under_rotation() {
        let mut rng = StdRng::seed_from_u64(77);
        for _ in 0..100 {
            let a = canonical_pairs(40, false)[rng.gen_range(0..canonical_pairs(40, false).len())];
            let c = build_cycle(&a);
            let r = rng.gen_range(0..c.len());
            assert!(rho(&c.cut(0)).cyclically_equal(&rho(&c.cut(r))), "{a} cut {r}");
        }
    }

    #[test]
    fn subtract_and_find_arc() {
        let c = cyc(&[0, 1, 2, 1, 2, 1, 0, 1]);
        let sub = c.arc_path(Arc { start: 1, edges: 4 });
        assert_eq!(sub.gradings(), &[1, 2, 1, 2, 1]);
        let rest = c.graph_subtract(&sub).unwrap();
        assert_eq!(rest.gradings(), &[1, 0, 1, 0, 1]);
        // closure of sub * rest is the original cycle
        let glued = sub.concat(&rest).unwrap().close().unwrap();
        assert!(glued.isomorphic(&c));
        // removing a full revolution leaves one vertex
        let all = c.cut(3);
        let left = c.graph_subtract(&all).unwrap();
        assert_eq!(left.gradings(), &[1]);
        // not an arc
        let foreign = path(&[5, 6, 5]);
        assert!(matches!(c.graph_subtract(&foreign), Err(Error::NotAnArc)));
    }

    #[test]
    fn reduce_chain_golden() {
        let (steps, base) = reduce_chain(&pair(119, 43)).unwrap();
        let pairs: Vec<(i64, i64)> = steps.iter().map(|s| (s.target().p(), s.target().q())).collect();
        assert_eq!(pairs, vec![(33, -23), (33, 23), (10, 3)]);
        assert_eq!((base.p(), base.q()), (10, 3));
    }
}
