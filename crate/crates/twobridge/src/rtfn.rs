//! Nested-subgraph witnesses for the relator structure of the Alexander
//! subgroup, their verification, the nested word families they induce, and
//! the homological-primitivity matrices of the finite-index subgroup chain.
//!
//! A witness for a pair consists of paths Gamma_1, ..., Gamma_N and
//! multiplicities n_1, ..., n_N such that each closed cycle cl(Gamma_(i-1))
//! splits as n_i consecutive copies of Gamma_i followed by a complementary
//! arc Upsilon_i that avoids every summit, each Gamma_i is symmetric and
//! avoids the bottoms, and Gamma_N is the three-vertex peak at the summit.
//! Base pairs (q = 1 or p mod q = 1) are handled directly; everything else
//! is built by expanding the witness of the reduced pair and locating the
//! expanded patterns inside the larger cycle graph.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::alexpoly::{alexander, IntPolynomial};
use crate::cyclegraph::{
    build_cycle, euclid_data, expand_path, is_base_pair, reduce, rho, Arc, IncrementalCycle,
    IncrementalPath,
};
use crate::error::{Error, Result};
use crate::intlinalg::{gcd_maximal_minors, index_of_chain_quotient, IntMatrix, QuotientOrder};
use crate::pairs::CoprimePair;
use crate::presentation::{rewrite_r0, subscript_bounds};
use crate::words::{AbelianVector, SWord};

/// One level of a witness: the repeating path, its multiplicity, the arc its
/// power occupies inside the previous closed cycle, and the complementary
/// arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessStage {
    pub multiplicity: u32,
    /// Arc of `gamma^multiplicity` inside the previous ambient cycle.
    pub arc: Arc,
    pub gamma: IncrementalPath,
    pub upsilon: IncrementalPath,
}

/// A nested-subgraph witness for a canonical pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RtfnWitness {
    pair: CoprimePair,
    stages: Vec<WitnessStage>,
}

impl RtfnWitness {
    pub fn pair(&self) -> &CoprimePair {
        &self.pair
    }

    pub fn depth(&self) -> usize {
        self.stages.len()
    }

    pub fn stages(&self) -> &[WitnessStage] {
        &self.stages
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.stages.iter().map(|s| s.multiplicity).collect()
    }

    /// The ambient chain: the cycle graph of the pair followed by the
    /// closures of the stage paths.
    pub fn ambient_cycles(&self) -> Result<Vec<IncrementalCycle>> {
        let mut out = vec![build_cycle(&self.pair)];
        for st in &self.stages {
            out.push(st.gamma.close()?);
        }
        Ok(out)
    }
}

/// The up-then-down path of the given depth ending at `top`.
fn peak_path(top: i64, depth: usize) -> IncrementalPath {
    let mut g: Vec<i64> = (0..=depth as i64).map(|j| top - depth as i64 + j).collect();
    g.extend((0..depth as i64).map(|j| top - 1 - j));
    IncrementalPath::new(g).expect("peak is incremental")
}

/// Locates `copies` consecutive repetitions of (a rotation of) the pattern
/// cycle inside the ambient cycle such that the complementary arc avoids the
/// summit grading and the repeating chunk stays above the bottom grading.
/// Exact grading matches are preferred; a match up to a constant offset is
/// accepted as a fallback, re-pinned to the ambient gradings.
fn find_stage(
    ambient: &IncrementalCycle,
    pattern: &IncrementalCycle,
    copies: u32,
    summit: i64,
    bottom: i64,
) -> Option<(Arc, IncrementalPath, IncrementalPath)> {
    let l = pattern.len();
    let total = l * copies as usize;
    if total > ambient.len() {
        return None;
    }
    let mut fallback = None;
    for s in 0..ambient.len() {
        if ambient.grading(s) != ambient.grading(s + l) {
            continue;
        }
        let periodic = (0..total.saturating_sub(l))
            .all(|j| ambient.grading(s + j) == ambient.grading(s + j + l));
        if !periodic {
            continue;
        }
        let arc = Arc { start: s, edges: total };
        let upsilon = ambient.subtract(arc).expect("arc fits");
        if upsilon.max_grading() >= summit {
            continue;
        }
        let gamma = ambient.arc_path(Arc { start: s, edges: l });
        if gamma.min_grading() <= bottom {
            continue;
        }
        let chunk = gamma.close().expect("chunk is closable");
        if chunk.isomorphic(pattern) {
            return Some((arc, gamma, upsilon));
        }
        if fallback.is_none() && chunk.relatively_isomorphic(pattern) {
            fallback = Some((arc, gamma, upsilon));
        }
    }
    fallback
}

fn push_stage(
    stages: &mut Vec<WitnessStage>,
    ambient: &mut IncrementalCycle,
    pattern: &IncrementalPath,
    multiplicity: u32,
    summit: i64,
    bottom: i64,
) -> Result<()> {
    let cycle = pattern.close()?;
    let (arc, gamma, upsilon) = find_stage(ambient, &cycle, multiplicity, summit, bottom)
        .ok_or_else(|| {
            Error::Witness(format!(
                "no arc holds {multiplicity} copies of a {}-edge pattern",
                cycle.len()
            ))
        })?;
    *ambient = gamma.close()?;
    stages.push(WitnessStage { multiplicity, arc, gamma, upsilon });
    Ok(())
}

/// Direct witness for a base pair: q = 1 or p mod q = 1 (q > 0).
pub fn base_witness(pair: &CoprimePair) -> Result<RtfnWitness> {
    let (p, q) = (pair.p(), pair.q());
    if q < 1 || !(q == 1 || p % q == 1) {
        return Err(Error::BaseCase(format!("{pair} is not a base pair")));
    }
    let mut ambient = build_cycle(pair);
    let summit = ambient.max_grading();
    let bottom = ambient.min_grading();
    let mut stages = Vec::new();
    if q == 1 {
        push_stage(&mut stages, &mut ambient, &peak_path(summit, 1), 1, summit, bottom)?;
    } else {
        let kappa = (p / q) as usize;
        let n1 = ((q + 1) / 2) as u32;
        push_stage(&mut stages, &mut ambient, &peak_path(summit, kappa), n1, summit, bottom)?;
        if kappa > 1 {
            push_stage(&mut stages, &mut ambient, &peak_path(summit, 1), 1, summit, bottom)?;
        }
    }
    Ok(RtfnWitness { pair: *pair, stages })
}

/// Lifts a witness of the reduced pair through the expansion. The inner
/// stages are the expansions of the reduced stages with unchanged
/// multiplicities; one or two top stages collect the summits that expansion
/// spreads out along the blocks.
pub fn lift_witness(star: &RtfnWitness, pair: &CoprimePair) -> Result<RtfnWitness> {
    let step = reduce(pair)?;
    if step.target != star.pair {
        return Err(Error::Witness(format!(
            "witness is for {}, but {} reduces to {}",
            star.pair, pair, step.target
        )));
    }
    let ed = euclid_data(pair)?;
    let kappa = ed.kappa;
    let kp = ed.kappa_prime.expect("reduce succeeded");
    let d = if kp % 2 == 0 { kp } else { kp - 1 };

    let mut ambient = build_cycle(pair);
    let summit = ambient.max_grading();
    let bottom = ambient.min_grading();
    let mut stages = Vec::new();
    for st in &star.stages {
        let e = st.gamma.last_edge_sign().expect("stage paths have edges");
        let pattern = expand_path(&st.gamma, kappa as usize, kp as usize, e);
        push_stage(&mut stages, &mut ambient, &pattern, st.multiplicity, summit, bottom)?;
    }
    let n_top = (d / 2 + 1) as u32;
    if kp == 1 || kappa == 1 {
        let h = ambient.max_grading();
        push_stage(&mut stages, &mut ambient, &peak_path(h, 1), n_top, summit, bottom)?;
    } else {
        let h = ambient.max_grading();
        push_stage(&mut stages, &mut ambient, &peak_path(h, kappa as usize), n_top, summit, bottom)?;
        let h = ambient.max_grading();
        push_stage(&mut stages, &mut ambient, &peak_path(h, 1), 1, summit, bottom)?;
    }
    Ok(RtfnWitness { pair: *pair, stages })
}

/// Transports a witness across the relative isomorphism between the cycle
/// graphs of (p, q) and (p, -q): the first-stage arc rotates, and every
/// grading shifts by a constant.
pub fn negate_witness(w: &RtfnWitness) -> Result<RtfnWitness> {
    let to = w.pair.mirror();
    let c_old = build_cycle(&w.pair);
    let c_new = build_cycle(&to);
    let (r, o) = c_old
        .relative_match(&c_new)
        .ok_or_else(|| Error::Witness(format!("{} and {} are not relatively isomorphic", w.pair, to)))?;
    let n = c_old.len();
    let stages: Vec<WitnessStage> = w
        .stages
        .iter()
        .enumerate()
        .map(|(i, st)| {
            let arc = if i == 0 {
                Arc { start: (st.arc.start + n - r % n) % n, edges: st.arc.edges }
            } else {
                st.arc
            };
            WitnessStage {
                multiplicity: st.multiplicity,
                arc,
                gamma: st.gamma.translate(o),
                upsilon: st.upsilon.translate(o),
            }
        })
        .collect();
    Ok(RtfnWitness { pair: to, stages })
}

/// Builds and verifies a witness for any canonical pair: base pairs
/// directly, negative q by transport from the mirror, and everything else by
/// reducing, recursing and lifting.
pub fn build_witness(pair: &CoprimePair) -> Result<RtfnWitness> {
    let w = if pair.q() < 0 {
        negate_witness(&build_witness(&pair.mirror())?)?
    } else if is_base_pair(pair) {
        base_witness(pair)?
    } else {
        let step = reduce(pair)?;
        let star = build_witness(&step.target)?;
        lift_witness(&star, pair)?
    };
    let report = verify_witness(&w);
    if !report.all_pass() {
        return Err(Error::Witness(format!("verification failed for {pair}: {report:?}")));
    }
    Ok(w)
}

/// Per-stage verification outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageCheck {
    pub stage: usize,
    /// Stored paths agree with the stored arc positions in the ambient.
    pub arcs_consistent: bool,
    /// cl(Gamma_(i-1)) is isomorphic to cl(Gamma_i^(n_i) * Upsilon_i).
    pub r3: bool,
    /// Upsilon_i contains no summit.
    pub r4: bool,
    /// cl(Gamma_i) is symmetric.
    pub r5_symmetric: bool,
    /// Gamma_i contains no bottom.
    pub r5_bottom_free: bool,
}

impl StageCheck {
    pub fn all_pass(&self) -> bool {
        self.arcs_consistent && self.r3 && self.r4 && self.r5_symmetric && self.r5_bottom_free
    }
}

/// Verification report for a witness; failures are recorded, not thrown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub pair: CoprimePair,
    /// The witness is anchored at the cycle graph of the pair.
    pub r1: bool,
    /// The final stage is the three-vertex peak at the summit.
    pub r2: bool,
    /// The cycle graph itself is symmetric.
    pub base_symmetric: bool,
    pub stages: Vec<StageCheck>,
}

impl WitnessReport {
    pub fn all_pass(&self) -> bool {
        self.r1 && self.r2 && self.base_symmetric && self.stages.iter().all(StageCheck::all_pass)
    }
}

pub fn verify_witness(w: &RtfnWitness) -> WitnessReport {
    let amb0 = build_cycle(&w.pair);
    let summit = amb0.max_grading();
    let bottom = amb0.min_grading();
    let base_symmetric = amb0.is_symmetric();

    let mut stages = Vec::new();
    let mut ambient = Some(amb0);
    for (i, st) in w.stages.iter().enumerate() {
        let stage = i + 1;
        let mut check = StageCheck {
            stage,
            arcs_consistent: false,
            r3: false,
            r4: st.upsilon.max_grading() < summit,
            r5_symmetric: st.gamma.close().map(|c| c.is_symmetric()).unwrap_or(false),
            r5_bottom_free: st.gamma.min_grading() > bottom,
        };
        if let Some(amb) = &ambient {
            let edges = st.gamma.edge_count();
            let span = edges * st.multiplicity as usize;
            if st.arc.edges == span && span <= amb.len() {
                let gamma_there = amb.arc_path(Arc { start: st.arc.start, edges });
                let upsilon_there = amb.subtract(st.arc).ok();
                check.arcs_consistent =
                    gamma_there == st.gamma && upsilon_there.as_ref() == Some(&st.upsilon);
            }
            check.r3 = st
                .gamma
                .power(st.multiplicity)
                .and_then(|p| p.concat(&st.upsilon))
                .and_then(|p| p.close())
                .map(|c| amb.isomorphic(&c))
                .unwrap_or(false);
        }
        ambient = st.gamma.close().ok();
        stages.push(check);
    }

    let r2 = w
        .stages
        .last()
        .map(|st| st.gamma == peak_path(summit, 1))
        .unwrap_or(false);
    let r1 = !w.stages.is_empty() && stages[0].arcs_consistent;
    WitnessReport { pair: w.pair, r1, r2, base_symmetric, stages }
}

/// The two word families a witness induces, one built at the summit side and
/// a reflected one at the bottom side, together with the multiplicities.
/// `ahat[0]` is the relator itself; `vhat[i-1]` belongs to stage i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedWords {
    pub ahat: Vec<SWord>,
    pub vhat: Vec<SWord>,
    pub acheck: Vec<SWord>,
    pub vcheck: Vec<SWord>,
    pub multiplicities: Vec<u32>,
}

/// Extracts the nested words and machine-checks all of their defining
/// conditions; any failure is an error since a verified witness always
/// satisfies them.
pub fn derive_nested_words(w: &RtfnWitness) -> Result<NestedWords> {
    let n_stages = w.depth();
    let amb0 = build_cycle(&w.pair);
    let (m, big_m) = subscript_bounds(&w.pair);
    let sym = amb0
        .symmetry()
        .ok_or_else(|| Error::NestedWord("base cycle symmetry".into()))?;
    let k = sym.constant;
    debug_assert_eq!(k, m + big_m + 1);

    let gamma0 = amb0.cut(0);
    let mut ahat = vec![rho(&gamma0)];
    let mut vhat = Vec::new();
    let mut acheck = vec![rho(&gamma0.reflect(k))];
    let mut vcheck = Vec::new();
    for st in w.stages.iter() {
        ahat.push(rho(&st.gamma));
        vhat.push(rho(&st.upsilon));
        acheck.push(rho(&st.gamma.reflect(k)));
        vcheck.push(rho(&st.upsilon.reflect(k)));
    }
    let mults = w.multiplicities();

    let fail = |c: &str| Err(Error::NestedWord(c.into()));

    // M1/m1: the words at level zero are the relator (up to rotation for the
    // reflected family, whose cut point is not canonical).
    let r0 = rewrite_r0(&w.pair);
    if ahat[0] != r0 {
        return fail("M1");
    }
    if !acheck[0].cyclically_equal(&r0) {
        return fail("m1");
    }

    // M2/m2: the last words are single extreme letters.
    let top = ahat[n_stages].free_reduce();
    if top.len() != 1 || top.letters()[0].subscript != big_m {
        return fail("M2");
    }
    let bot = acheck[n_stages].free_reduce();
    if bot.len() != 1 || bot.letters()[0].subscript != m {
        return fail("m2");
    }

    for i in 1..=n_stages {
        let n_i = mults[i - 1];
        // M3/m3: each level is a power of the next times the complement word,
        // up to conjugation.
        if !ahat[i - 1].cyclically_equal(&ahat[i].power(n_i).concat(&vhat[i - 1])) {
            return fail(&format!("M3 at stage {i}"));
        }
        if !acheck[i - 1].cyclically_equal(&acheck[i].power(n_i).concat(&vcheck[i - 1])) {
            return fail(&format!("m3 at stage {i}"));
        }
        // M4/m4: complement words avoid the extreme letters.
        if vhat[i - 1].mentions(big_m) {
            return fail(&format!("M4 at stage {i}"));
        }
        if vcheck[i - 1].mentions(m) {
            return fail(&format!("m4 at stage {i}"));
        }
        // M5: the class of ahat[i] is supported on [l, M] with l the minimum
        // grading of the stage path, m < l, and has palindromic magnitudes.
        let ab = ahat[i].abelianize();
        let l = w.stages[i - 1].gamma.min_grading();
        if ab.support_min() != Some(l) || ab.support_max() != Some(big_m) || l <= m {
            return fail(&format!("M5 support at stage {i}"));
        }
        for j in 0..=(big_m - l) {
            if ab.coeff(l + j).abs() != ab.coeff(big_m - j).abs() {
                return fail(&format!("M5 palindrome at stage {i}"));
            }
        }
        // m5: mirror statement on [m, l'] with l' < M.
        let ab = acheck[i].abelianize();
        let Some(lp) = ab.support_max() else {
            return fail(&format!("m5 support at stage {i}"));
        };
        if ab.support_min() != Some(m) || lp >= big_m {
            return fail(&format!("m5 support at stage {i}"));
        }
        for j in 0..=(lp - m) {
            if ab.coeff(m + j).abs() != ab.coeff(lp - j).abs() {
                return fail(&format!("m5 palindrome at stage {i}"));
            }
        }
    }

    Ok(NestedWords { ahat, vhat, acheck, vcheck, multiplicities: mults })
}

/// Rebuilds the relator from the top of the witness downward by exact
/// substitution in the free group: each level conjugates the assembled
/// power-times-complement word back to the canonical cut using the word of
/// the arc-offset path. The result is freely equal to R_0.
pub fn reconstruct_relator(w: &RtfnWitness) -> Result<SWord> {
    let ambients = w.ambient_cycles()?;
    let mut rec = rho(&w.stages.last().ok_or_else(|| Error::Witness("empty witness".into()))?.gamma);
    for i in (0..w.depth()).rev() {
        let st = &w.stages[i];
        let u = rho(&ambients[i].arc_path(Arc { start: 0, edges: st.arc.start }));
        rec = u
            .concat(&rec.power(st.multiplicity))
            .concat(&rho(&st.upsilon))
            .concat(&u.invert());
    }
    Ok(rec)
}

/// Either side of the root-adjunction tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Summit,
    Bottom,
}

/// One homological-primitivity constant per adjunction step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStepRecord {
    pub step: usize,
    pub c_summit: BigInt,
    pub c_bottom: BigInt,
}

impl ChainStepRecord {
    pub fn primitive(&self) -> bool {
        self.c_summit.is_one() && self.c_bottom.is_one()
    }
}

/// Primitivity constants and index at one chain level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLevelReport {
    pub level: i64,
    pub records: Vec<ChainStepRecord>,
    pub index: QuotientOrder,
}

impl ChainLevelReport {
    pub fn all_primitive(&self) -> bool {
        self.records.iter().all(ChainStepRecord::primitive)
    }
}

/// Full chain report: the polynomial data, whether the coprime-coefficient
/// hypothesis holds, and the per-level matrix results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub pair: CoprimePair,
    pub delta: IntPolynomial,
    pub content: BigInt,
    pub coprime_hypothesis: bool,
    pub multiplicities: Vec<u32>,
    pub levels: Vec<ChainLevelReport>,
}

impl ChainReport {
    pub fn all_primitive(&self) -> bool {
        self.levels.iter().all(ChainLevelReport::all_primitive)
    }
}

/// Builds the banded relator-class matrix with the adjunction rows for one
/// side and step, performs the prescribed row eliminations, and returns the
/// gcd of the maximal minors of the trimmed matrix.
fn chain_constant(
    r0ab: &AbelianVector,
    bounds: (i64, i64),
    level: i64,
    step: usize,
    side: Side,
    words: &NestedWords,
) -> Result<BigInt> {
    let (m, big_m) = bounds;
    let n = level;
    let (lo, hi, band_js, shift) = match side {
        Side::Summit => (m - n, big_m + n - 1, (-n..n).collect::<Vec<i64>>(), n),
        Side::Bottom => (m - n, big_m + n, (-n..=n).collect::<Vec<i64>>(), -n - 1),
    };
    let width = (hi - lo + 1) as usize;
    let k = step;
    let tcols = k - 1;
    let bands = band_js.len();
    let mut b = IntMatrix::zero(bands + k, width + tcols);
    for (r, j) in band_js.iter().enumerate() {
        for (s, v) in r0ab.iter() {
            b.set(r, (s + j - lo) as usize, BigInt::from(v));
        }
    }
    let side_words = match side {
        Side::Summit => &words.vhat,
        Side::Bottom => &words.vcheck,
    };
    for jj in 1..=k {
        let row = bands + jj - 1;
        for (s, v) in side_words[jj - 1].abelianize().shift(shift).iter() {
            b.set(row, (s - lo) as usize, BigInt::from(v));
        }
        if jj >= 2 {
            b.set(row, width + jj - 2, BigInt::from(-1));
        }
        if jj < k {
            b.set(row, width + jj - 1, BigInt::from(words.multiplicities[jj - 1] as i64));
        }
    }

    // fold each adjunction row into the previous one, clearing the
    // multiplicity columns from the bottom up
    for jj in (1..k).rev() {
        let mult = BigInt::from(words.multiplicities[jj - 1] as i64);
        let src = bands + jj;
        let dst = bands + jj - 1;
        for c in 0..width + tcols {
            let v = b.get(dst, c) + &mult * b.get(src, c);
            b.set(dst, c, v);
        }
    }
    for c in 0..tcols {
        if !b.get(bands, width + c).is_zero() {
            return Err(Error::ChainInvariant("multiplicity columns not cleared".into()));
        }
    }

    // telescoping identity: the folded row equals the shifted relator class
    // minus the product of multiplicities times the class of the level-k word
    let prod: i64 = words.multiplicities[..k].iter().map(|&x| x as i64).product();
    let a_side = match side {
        Side::Summit => &words.ahat[k],
        Side::Bottom => &words.acheck[k],
    };
    let expect = r0ab.shift(shift).sub(&a_side.abelianize().shift(shift).scale(prod));
    for s in lo..=hi {
        if b.get(bands, (s - lo) as usize) != &BigInt::from(expect.coeff(s)) {
            return Err(Error::ChainInvariant(format!(
                "telescoped row disagrees at subscript {s} (level {n}, step {k})"
            )));
        }
    }
    if expect.support_min().is_some_and(|s| s < lo) || expect.support_max().is_some_and(|s| s > hi)
    {
        return Err(Error::ChainInvariant("telescoped row leaves the generator range".into()));
    }

    let mut d = IntMatrix::zero(bands + 1, width);
    for r in 0..=bands {
        for c in 0..width {
            d.set(r, c, b.get(r, c).clone());
        }
    }
    gcd_maximal_minors(&d)
}

/// Runs the primitivity computation for every adjunction step on both sides
/// at every chain level up to `max_level`, recording the step-quotient index
/// per level.
pub fn parafree_chain_report(pair: &CoprimePair, max_level: i64) -> Result<ChainReport> {
    let w = build_witness(pair)?;
    let words = derive_nested_words(&w)?;
    let delta = alexander(pair);
    let content = delta.content()?;
    let r0ab = rewrite_r0(pair).abelianize();
    let bounds = subscript_bounds(pair);

    let mut levels = Vec::new();
    for level in 0..=max_level {
        let mut records = Vec::new();
        for step in 1..=w.depth() {
            records.push(ChainStepRecord {
                step,
                c_summit: chain_constant(&r0ab, bounds, level, step, Side::Summit, &words)?,
                c_bottom: chain_constant(&r0ab, bounds, level, step, Side::Bottom, &words)?,
            });
        }
        levels.push(ChainLevelReport {
            level,
            records,
            index: index_of_chain_quotient(pair, level),
        });
    }
    Ok(ChainReport {
        pair: *pair,
        delta,
        coprime_hypothesis: content.is_one(),
        content,
        multiplicities: words.multiplicities.clone(),
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::canonical_pairs;
    use num_traits::Signed;

    fn pair(p: i64, q: i64) -> CoprimePair {
        CoprimePair::normalize(p, q).unwrap()
    }

    #[test]
    fn base_witness_3_1() {
        let w = base_witness(&pair(3, 1)).unwrap();
        assert_eq!(w.depth(), 1);
        assert_eq!(w.multiplicities(), vec![1]);
        assert_eq!(w.stages()[0].gamma.gradings(), &[2, 3, 2]);
        assert!(verify_witness(&w).all_pass());
    }

    #[test]
    fn base_witness_7_3() {
        let w = base_witness(&pair(7, 3)).unwrap();
        assert_eq!(w.depth(), 2);
        assert_eq!(w.multiplicities(), vec![2, 1]);
        assert!(verify_witness(&w).all_pass());
    }

    #[test]
    fn base_witness_5_1() {
        let w = base_witness(&pair(5, 1)).unwrap();
        assert_eq!(w.depth(), 1);
        assert_eq!(w.multiplicities(), vec![1]);
        // the complement is the whole cycle minus the summit peak
        let c = build_cycle(&pair(5, 1));
        let expect = c.graph_subtract(&w.stages()[0].gamma).unwrap();
        assert_eq!(w.stages()[0].upsilon, expect);
        assert!(verify_witness(&w).all_pass());
    }

    #[test]
    fn base_witness_rejects_non_base() {
        assert!(base_witness(&pair(17, 13)).is_err());
        assert!(base_witness(&pair(3, -1)).is_err());
    }

    #[test]
    fn witness_17_13_matches_worked_example() {
        let w = build_witness(&pair(17, 13)).unwrap();
        assert_eq!(w.depth(), 2);
        assert_eq!(w.multiplicities(), vec![2, 2]);
        let words = derive_nested_words(&w).unwrap();
        let want = |s: &str| s.parse::<SWord>().unwrap();
        assert!(words.ahat[1].cyclically_equal(&want("S_1 S_1 S_0^-1 S_0^-1")));
        assert_eq!(words.ahat[2].free_reduce(), want("S_1"));
        assert!(words.vhat[0]
            .cyclically_equal(&want("S_0^-1 S_-1 S_-1 S_0^-1 S_0^-1 S_-1 S_-1 S_0^-1 S_0^-1")));
        assert_eq!(words.vhat[1].free_reduce(), want("S_0^-1 S_0^-1"));
        // reflected family, as listed one subscript down
        assert!(words.acheck[1]
            .shift(-1)
            .cyclically_equal(&want("S_-2 S_-2 S_-1^-1 S_-1^-1")));
        assert_eq!(words.acheck[2].free_reduce().shift(-1), want("S_-2"));
        assert!(words.vcheck[0]
            .shift(-1)
            .cyclically_equal(&want("S_0 S_0 S_-1^-1 S_-1^-1 S_0 S_0 S_-1^-1 S_-1^-1 S_-1^-1")));
        assert!(words.vcheck[1]
            .shift(-1)
            .cyclically_equal(&want("S_-1^-1 S_-1^-1")));
    }

    #[test]
    fn witness_depths_along_golden_chain() {
        let w = build_witness(&pair(10, 3)).unwrap();
        assert_eq!(w.multiplicities(), vec![2, 1]);
        let w = build_witness(&pair(33, 23)).unwrap();
        assert_eq!(w.multiplicities(), vec![2, 1, 2]);
        let w = build_witness(&pair(33, -23)).unwrap();
        assert_eq!(w.multiplicities(), vec![2, 1, 2]);
        let w = build_witness(&pair(119, 43)).unwrap();
        assert_eq!(w.multiplicities(), vec![2, 1, 2, 1]);
    }

    #[test]
    fn lift_26_11_keeps_inner_multiplicity() {
        let w = build_witness(&pair(26, 11)).unwrap();
        assert_eq!(w.multiplicities()[0], 2);
        assert!(verify_witness(&w).all_pass());
    }

    #[test]
    fn negate_witness_round_trip() {
        for (p, q) in [(33, 23), (17, 13), (7, 3)] {
            let w = build_witness(&pair(p, q)).unwrap();
            let neg = negate_witness(&w).unwrap();
            assert_eq!(*neg.pair(), pair(p, -q));
            assert!(verify_witness(&neg).all_pass());
            let back = negate_witness(&neg).unwrap();
            assert!(verify_witness(&back).all_pass());
            // double negation returns an equivalent witness: same shape
            assert_eq!(back.multiplicities(), w.multiplicities());
            for (a, b) in back.stages().iter().zip(w.stages()) {
                assert!(a.gamma.close().unwrap().isomorphic(&b.gamma.close().unwrap()));
            }
        }
    }

    #[test]
    fn corrupt_witness_fails_r3() {
        let w = build_witness(&pair(7, 3)).unwrap();
        let mut bad = w.clone();
        let mut g = bad.stages[0].gamma.gradings().to_vec();
        let last = g.len() - 1;
        g[last] += 2;
        bad.stages[0].gamma = IncrementalPath::new(g).unwrap();
        let report = verify_witness(&bad);
        assert!(!report.stages[0].r3);
        assert!(!report.all_pass());
    }

    #[test]
    fn witness_totality_small_sweep() {
        for a in canonical_pairs(40, true) {
            let w = build_witness(&a).unwrap_or_else(|e| panic!("{a}: {e}"));
            assert!(verify_witness(&w).all_pass(), "{a}");
            derive_nested_words(&w).unwrap_or_else(|e| panic!("{a}: {e}"));
        }
    }

    #[test]
    fn substitution_reconstructs_relator() {
        for a in canonical_pairs(40, true) {
            let w = build_witness(&a).unwrap();
            let rec = reconstruct_relator(&w).unwrap();
            assert_eq!(rec.free_reduce(), rewrite_r0(&a).free_reduce(), "{a}");
        }
    }

    #[test]
    fn trivial_base_substitution() {
        let w = build_witness(&pair(3, 1)).unwrap();
        let words = derive_nested_words(&w).unwrap();
        let rhs = words.ahat[1].power(1).concat(&words.vhat[0]);
        assert!(rewrite_r0(&pair(3, 1)).cyclically_equal(&rhs));
    }

    #[test]
    fn chain_report_17_13() {
        let r = parafree_chain_report(&pair(17, 13), 3).unwrap();
        assert!(r.coprime_hypothesis);
        assert_eq!(r.content, BigInt::from(1));
        assert!(r.all_primitive());
        for level in &r.levels {
            for rec in &level.records {
                assert_eq!(rec.c_summit, BigInt::from(1));
                assert_eq!(rec.c_bottom, BigInt::from(1));
            }
            assert_eq!(level.index, QuotientOrder::Finite(BigInt::from(16)));
        }
    }

    #[test]
    fn chain_report_flags_torus_orientation() {
        let r = parafree_chain_report(&pair(4, 3), 2).unwrap();
        assert!(!r.coprime_hypothesis);
        assert_eq!(r.content, BigInt::from(2));
        assert!(!r.all_primitive());
    }

    #[test]
    fn chain_report_coprime_pairs_are_primitive() {
        for a in canonical_pairs(24, false) {
            let r = parafree_chain_report(&a, 2).unwrap();
            if r.coprime_hypothesis {
                assert!(r.all_primitive(), "{a}");
            }
            // index is the squared leading coefficient at every level
            let lead = r.delta.leading().unwrap().abs();
            for level in &r.levels {
                assert_eq!(
                    level.index,
                    QuotientOrder::Finite(&lead * &lead),
                    "{a} level {}",
                    level.level
                );
            }
        }
    }

    #[test]
    fn final_step_leading_coefficient_factorization() {
        for a in canonical_pairs(40, false) {
            let w = build_witness(&a).unwrap();
            let words = derive_nested_words(&w).unwrap();
            let (_, big_m) = subscript_bounds(&a);
            let prod: i64 = words.multiplicities.iter().map(|&x| x as i64).product();
            let a_m = rewrite_r0(&a).abelianize().coeff(big_m);
            let b_m = words.ahat[w.depth()].abelianize().coeff(big_m);
            assert_eq!(a_m, b_m * prod, "{a}");
        }
    }
}
