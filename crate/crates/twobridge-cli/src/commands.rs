//! Command implementations. Each returns the rendered output so the
//! binary's main stays a thin dispatcher and the logic is unit-testable.

use std::fmt::Write as _;

use serde_json::{json, Value};

use twobridge::alexpoly::{alexander, genus, IntPolynomial};
use twobridge::cyclegraph::{build_cycle, reduce_chain, segments, Arc, ChainStep};
use twobridge::orderability::{certify, lyubich_murasugi_applies, Status, Verdict};
use twobridge::pairs::{canonical_pairs, CoprimePair};
use twobridge::presentation::{chain_presentation, rewrite_r0, schubert_word, subscript_bounds};
use twobridge::rtfn::{
    build_witness, derive_nested_words, parafree_chain_report, verify_witness, ChainReport,
    RtfnWitness,
};

use crate::output::*;

/// Command failure, tagged with the exit code it should map to.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: unparsable or degenerate fraction, missing file. Exit 2.
    Usage(String),
    /// A verification that must hold failed. Exit 3.
    Verification(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Verification(m) => write!(f, "verification failure: {m}"),
        }
    }
}

pub type CmdResult = Result<String, CliError>;

pub fn parse_pair(s: &str) -> Result<CoprimePair, CliError> {
    s.parse::<CoprimePair>()
        .map_err(|e| CliError::Usage(format!("{s:?}: {e}")))
}

fn status_json(v: &Verdict) -> Value {
    object(vec![
        ("status", json!(v.status.to_string())),
        ("content", bigint_json(&v.content)),
        (
            "sturm",
            object(vec![
                ("distinct_roots", json!(v.roots.distinct)),
                ("all_real_positive", json!(v.roots.all_real_positive)),
            ]),
        ),
        ("cf_entries", json!(v.cf_entries)),
        (
            "genus_one",
            v.genus_one.as_ref().map_or(Value::Null, |g| {
                object(vec![
                    ("twists", json!(g.twists)),
                    ("status", json!(g.status.to_string())),
                ])
            }),
        ),
        ("reasons", json!(v.reasons)),
    ])
}

fn chain_json(report: &ChainReport) -> Value {
    object(vec![
        ("content", bigint_json(&report.content)),
        ("coprime_hypothesis", json!(report.coprime_hypothesis)),
        ("all_primitive", json!(report.all_primitive())),
        (
            "levels",
            Value::Array(
                report
                    .levels
                    .iter()
                    .map(|l| {
                        object(vec![
                            ("level", json!(l.level)),
                            (
                                "C_values",
                                Value::Array(
                                    l.records
                                        .iter()
                                        .map(|r| {
                                            object(vec![
                                                ("step", json!(r.step)),
                                                ("summit", bigint_json(&r.c_summit)),
                                                ("bottom", bigint_json(&r.c_bottom)),
                                            ])
                                        })
                                        .collect(),
                                ),
                            ),
                            ("index", index_json(&l.index)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

fn witness_json(w: &RtfnWitness, chain: Option<&ChainReport>) -> Result<Value, CliError> {
    let words =
        derive_nested_words(w).map_err(|e| CliError::Verification(format!("{}: {e}", w.pair())))?;
    let arcs = |a: &Arc| json!({ "start": a.start, "edges": a.edges });
    let stages: Vec<Value> = w
        .stages()
        .iter()
        .map(|st| {
            object(vec![
                ("gamma", arcs(&Arc { start: st.arc.start, edges: st.gamma.edge_count() })),
                ("upsilon", arcs(&Arc {
                    start: (st.arc.start + st.arc.edges) % (st.arc.edges + st.upsilon.edge_count()),
                    edges: st.upsilon.edge_count(),
                })),
                ("n", json!(st.multiplicity)),
            ])
        })
        .collect();
    let words_json = object(vec![
        ("ahat", Value::Array(words.ahat.iter().map(word_json).collect())),
        ("vhat", Value::Array(words.vhat.iter().map(word_json).collect())),
        ("acheck", Value::Array(words.acheck.iter().map(word_json).collect())),
        ("vcheck", Value::Array(words.vcheck.iter().map(word_json).collect())),
    ]);
    Ok(object(vec![
        ("pair", pair_json(w.pair())),
        ("N", json!(w.depth())),
        ("stages", Value::Array(stages)),
        ("words", words_json),
        ("chain", chain.map_or(Value::Null, chain_json)),
    ]))
}

fn poly_text(p: &IntPolynomial) -> String {
    p.to_string()
}

pub fn cmd_certify(fraction: &str, as_json: bool) -> CmdResult {
    let pair = parse_pair(fraction)?;
    let v = certify(&pair);
    if as_json {
        let mut val = status_json(&v);
        val["pair"] = pair_json(&pair);
        return Ok(serde_json::to_string_pretty(&val).unwrap());
    }
    let mut out = String::new();
    let _ = writeln!(out, "pair: {pair} ({})", if pair.is_knot() { "knot" } else { "link" });
    let _ = writeln!(out, "alexander polynomial: {}", poly_text(&v.delta));
    let _ = writeln!(out, "content: {}", v.content);
    let _ = writeln!(
        out,
        "roots in (0, oo): {} distinct; all real positive: {}",
        v.roots.distinct, v.roots.all_real_positive
    );
    let _ = writeln!(out, "continued fraction of p/(p-q): {:?}", v.cf_entries);
    if let Some(g) = &v.genus_one {
        let _ = writeln!(out, "genus-one twists {:?}: {}", g.twists, g.status);
    }
    let _ = writeln!(out, "verdict: {}", v.status);
    for r in &v.reasons {
        let _ = writeln!(out, "  - {r}");
    }
    Ok(out)
}

pub fn cmd_present(fraction: &str, level: Option<i64>, as_json: bool) -> CmdResult {
    let pair = parse_pair(fraction)?;
    let w = schubert_word(&pair);
    let r0 = rewrite_r0(&pair);
    let (m, big_m) = subscript_bounds(&pair);
    let level_val = level.unwrap_or(1).max(0);
    let chain = chain_presentation(&pair, level_val)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if as_json {
        let val = object(vec![
            ("pair", pair_json(&pair)),
            ("group_relator", json!(w.to_string())),
            ("relator_R0", word_json(&r0)),
            ("subscripts", json!({ "min": m, "max": big_m })),
            (
                "chain",
                object(vec![
                    ("level", json!(chain.level)),
                    ("generators", json!((chain.gen_min..=chain.gen_max).collect::<Vec<_>>())),
                    (
                        "relators",
                        Value::Array(chain.relators.iter().map(word_json).collect()),
                    ),
                ]),
            ),
        ]);
        return Ok(serde_json::to_string_pretty(&val).unwrap());
    }
    let mut out = String::new();
    let _ = writeln!(out, "pi(L({pair})) = < a, b | w >");
    let _ = writeln!(out, "w = {w}");
    let _ = writeln!(out, "alexander subgroup relator R_0 = {r0}");
    let _ = writeln!(out, "subscript range: m = {m}, M = {big_m}");
    let _ = writeln!(
        out,
        "level {} presentation: generators S_{}..S_{}, {} relators",
        chain.level, chain.gen_min, chain.gen_max,
        chain.relators.len()
    );
    for (i, r) in chain.relators.iter().enumerate() {
        let _ = writeln!(out, "  R_{} = {r}", i as i64 - chain.level);
    }
    Ok(out)
}

pub fn cmd_graph(fraction: &str, dot: bool, as_json: bool) -> CmdResult {
    let pair = parse_pair(fraction)?;
    let cycle = build_cycle(&pair);
    if dot {
        return Ok(cycle_dot("cycle", &cycle, &[]));
    }
    let dec = segments(&cycle);
    if as_json {
        let val = object(vec![
            ("pair", pair_json(&pair)),
            ("gradings", json!(cycle.gradings())),
            ("summits", json!(cycle.summits())),
            ("bottoms", json!(cycle.bottoms())),
            (
                "segments",
                Value::Array(
                    dec.segments
                        .iter()
                        .map(|s| {
                            object(vec![
                                ("sign", json!(s.sign)),
                                ("len", json!(s.len)),
                                ("start_edge", json!(s.start_edge)),
                            ])
                        })
                        .collect(),
                ),
            ),
            ("symmetric", json!(cycle.is_symmetric())),
        ]);
        return Ok(serde_json::to_string_pretty(&val).unwrap());
    }
    let mut out = String::new();
    let _ = writeln!(out, "cycle graph of {pair}: {} vertices", cycle.len());
    let _ = writeln!(out, "gradings: {:?}", cycle.gradings());
    let _ = writeln!(out, "summits at {:?} (grading {})", cycle.summits(), cycle.max_grading());
    let _ = writeln!(out, "bottoms at {:?} (grading {})", cycle.bottoms(), cycle.min_grading());
    let _ = writeln!(out, "{} segments of alternating sign:", dec.count());
    for s in &dec.segments {
        let sign = if s.sign > 0 { '+' } else { '-' };
        let _ = writeln!(out, "  {sign}{} at edge {}", s.len, s.start_edge);
    }
    let _ = writeln!(out, "symmetric: {}", cycle.is_symmetric());
    Ok(out)
}

pub fn cmd_reduce_chain(fraction: &str, as_json: bool) -> CmdResult {
    let pair = parse_pair(fraction)?;
    let (steps, base) =
        reduce_chain(&pair).map_err(|e| CliError::Usage(e.to_string()))?;
    if as_json {
        let arr: Vec<Value> = steps
            .iter()
            .map(|s| match s {
                ChainStep::Reduce(r) => object(vec![
                    ("kind", json!("reduce")),
                    ("from", pair_json(&r.source)),
                    ("to", pair_json(&r.target)),
                    ("kappa", json!(r.kappa)),
                    ("xi", json!(r.xi)),
                    ("kappa_prime", json!(r.kappa_prime)),
                    ("xi_prime", json!(r.xi_prime)),
                ]),
                ChainStep::Negate { from, to, shift } => object(vec![
                    ("kind", json!("negate")),
                    ("from", pair_json(from)),
                    ("to", pair_json(to)),
                    ("shift", json!(shift)),
                ]),
            })
            .collect();
        let val = object(vec![
            ("pair", pair_json(&pair)),
            ("steps", Value::Array(arr)),
            ("base", pair_json(&base)),
        ]);
        return Ok(serde_json::to_string_pretty(&val).unwrap());
    }
    let mut out = String::new();
    let _ = write!(out, "{pair}");
    for s in &steps {
        match s {
            ChainStep::Reduce(r) => {
                let _ = write!(out, " -R-> {}", r.target);
            }
            ChainStep::Negate { to, shift, .. } => {
                let _ = write!(out, " -rel({shift})-> {to}");
            }
        }
    }
    let _ = writeln!(out, "  (base {base})");
    Ok(out)
}

pub fn cmd_witness(fraction: &str, as_json: bool, dot_per_stage: bool, level: i64) -> CmdResult {
    let pair = parse_pair(fraction)?;
    let w = build_witness(&pair).map_err(|e| CliError::Verification(e.to_string()))?;
    let report = verify_witness(&w);
    if !report.all_pass() {
        return Err(CliError::Verification(format!("{pair}: {report:?}")));
    }
    if dot_per_stage {
        let ambients = w
            .ambient_cycles()
            .map_err(|e| CliError::Verification(e.to_string()))?;
        let mut out = String::new();
        for (i, st) in w.stages().iter().enumerate() {
            let bold: Vec<usize> =
                (0..st.arc.edges).map(|j| (st.arc.start + j) % ambients[i].len()).collect();
            out.push_str(&cycle_dot(&format!("stage_{}", i + 1), &ambients[i], &bold));
        }
        return Ok(out);
    }
    let chain = parafree_chain_report(&pair, level)
        .map_err(|e| CliError::Verification(e.to_string()))?;
    if as_json {
        let val = witness_json(&w, Some(&chain))?;
        return Ok(serde_json::to_string_pretty(&val).unwrap());
    }
    let words =
        derive_nested_words(&w).map_err(|e| CliError::Verification(e.to_string()))?;
    let mut out = String::new();
    let _ = writeln!(out, "pair: {pair}");
    let _ = writeln!(out, "witness depth N = {}", w.depth());
    let _ = writeln!(out, "multiplicities: {:?}", w.multiplicities());
    for (i, st) in w.stages().iter().enumerate() {
        let _ = writeln!(
            out,
            "stage {}: n = {}, gamma^n at arc(start {}, {} edges), gamma of {} edges",
            i + 1,
            st.multiplicity,
            st.arc.start,
            st.arc.edges,
            st.gamma.edge_count()
        );
    }
    for (i, a) in words.ahat.iter().enumerate() {
        let _ = writeln!(out, "A^_{i} = {a}");
    }
    for (i, v) in words.vhat.iter().enumerate() {
        let _ = writeln!(out, "V^_{} = {v}", i + 1);
    }
    for (i, a) in words.acheck.iter().enumerate() {
        let _ = writeln!(out, "Av_{i} = {a}");
    }
    for (i, v) in words.vcheck.iter().enumerate() {
        let _ = writeln!(out, "Vv_{} = {v}", i + 1);
    }
    let _ = writeln!(out, "all witness conditions verified");
    let _ = writeln!(
        out,
        "chain levels 0..{}: all primitivity constants 1: {}",
        level,
        chain.all_primitive()
    );
    if let Some(l) = chain.levels.first() {
        let _ = writeln!(out, "step-quotient index: {}", l.index);
    }
    Ok(out)
}

pub fn cmd_analyze(fraction: &str, level: i64, as_json: bool) -> CmdResult {
    let pair = parse_pair(fraction)?;
    let verdict = certify(&pair);
    let cf = pair.even_continued_fraction();
    let r0 = rewrite_r0(&pair);
    let (m, big_m) = subscript_bounds(&pair);
    let g = genus(&pair);
    let delta = alexander(&pair);
    // internal consistency: genus from the polynomial degree agrees with the
    // continued-fraction genus
    let deg = delta.degree().unwrap() as u32;
    debug_assert_eq!(deg, if pair.is_knot() { 2 * g } else { 2 * g + 1 });
    let (steps, base) =
        reduce_chain(&pair).map_err(|e| CliError::Usage(e.to_string()))?;
    let w = build_witness(&pair).map_err(|e| CliError::Verification(e.to_string()))?;
    let chain = parafree_chain_report(&pair, level)
        .map_err(|e| CliError::Verification(e.to_string()))?;

    if as_json {
        let val = object(vec![
            ("pair", pair_json(&pair)),
            ("knot", json!(pair.is_knot())),
            ("mirror", pair_json(&pair.mirror())),
            ("continued_fraction", json!(cf.entries())),
            ("all_positive_fraction", json!(lyubich_murasugi_applies(&pair))),
            ("genus", json!(g)),
            ("alexander", poly_json(delta.coeffs())),
            ("content", bigint_json(&verdict.content)),
            ("relator_R0", word_json(&r0)),
            ("subscripts", json!({ "min": m, "max": big_m })),
            (
                "reduction_chain",
                Value::Array(
                    std::iter::once(pair_json(&pair))
                        .chain(steps.iter().map(|s| pair_json(&s.target())))
                        .collect(),
                ),
            ),
            ("base_pair", pair_json(&base)),
            ("witness", witness_json(&w, None)?),
            ("chain", chain_json(&chain)),
            ("verdict", status_json(&verdict)),
        ]);
        return Ok(serde_json::to_string_pretty(&val).unwrap());
    }

    let mut out = String::new();
    let _ = writeln!(out, "pair: {pair} ({})", if pair.is_knot() { "knot" } else { "link" });
    let _ = writeln!(out, "mirror: {}", pair.mirror());
    let _ = writeln!(out, "continued fraction of p/(p-q): {cf}");
    let _ = writeln!(out, "genus: {g}");
    let _ = writeln!(
        out,
        "alexander polynomial: {} (content {})",
        poly_text(&delta),
        verdict.content
    );
    let _ = writeln!(out, "relator R_0 ({} letters): {r0}", r0.len());
    let _ = writeln!(out, "subscript range: m = {m}, M = {big_m}");
    let mut chain_line = format!("{pair}");
    for s in &steps {
        match s {
            ChainStep::Reduce(r) => chain_line.push_str(&format!(" -R-> {}", r.target)),
            ChainStep::Negate { to, .. } => chain_line.push_str(&format!(" -rel-> {to}")),
        }
    }
    let _ = writeln!(out, "reduction chain: {chain_line} (base {base})");
    let _ = writeln!(
        out,
        "witness: N = {}, multiplicities {:?} -- verified",
        w.depth(),
        w.multiplicities()
    );
    let index = chain
        .levels
        .first()
        .map(|l| l.index.to_string())
        .unwrap_or_default();
    let _ = writeln!(
        out,
        "chain levels 0..{level}: primitivity constants all 1: {}; index: {index}",
        chain.all_primitive()
    );
    let _ = writeln!(out, "verdict: {}", verdict.status);
    for r in &verdict.reasons {
        let _ = writeln!(out, "  - {r}");
    }
    Ok(out)
}

/// Outcome counts for a batch sweep.
#[derive(Debug, Default)]
struct BatchTotals {
    bi_orderable: usize,
    not_bi_orderable: usize,
    unknown: usize,
    witness_failures: usize,
}

pub fn cmd_batch(
    max_p: i64,
    file: Option<&str>,
    jobs: Option<usize>,
    as_json: bool,
) -> CmdResult {
    let pairs: Vec<CoprimePair> = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
            let mut v = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                v.push(parse_pair(line)?);
            }
            v
        }
        None => canonical_pairs(max_p, true),
    };
    log::debug!("batch over {} pairs", pairs.len());

    let run = |pair: &CoprimePair| -> (CoprimePair, Status, bool) {
        let status = certify(pair).status;
        let ok = build_witness(pair)
            .map(|w| verify_witness(&w).all_pass() && derive_nested_words(&w).is_ok())
            .unwrap_or(false);
        (*pair, status, ok)
    };
    let results: Vec<(CoprimePair, Status, bool)> = match jobs {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            pool.install(|| {
                use rayon::prelude::*;
                pairs.par_iter().map(run).collect()
            })
        }
        None => pairs.iter().map(run).collect(),
    };

    let mut totals = BatchTotals::default();
    for (_, status, ok) in &results {
        match status {
            Status::BiOrderable => totals.bi_orderable += 1,
            Status::NotBiOrderable => totals.not_bi_orderable += 1,
            Status::Unknown => totals.unknown += 1,
        }
        if !ok {
            totals.witness_failures += 1;
        }
    }

    if as_json {
        let val = object(vec![
            ("pairs", json!(results.len())),
            ("bi_orderable", json!(totals.bi_orderable)),
            ("not_bi_orderable", json!(totals.not_bi_orderable)),
            ("unknown", json!(totals.unknown)),
            ("witness_failures", json!(totals.witness_failures)),
            (
                "results",
                Value::Array(
                    results
                        .iter()
                        .map(|(p, s, ok)| {
                            object(vec![
                                ("pair", pair_json(p)),
                                ("status", json!(s.to_string())),
                                ("witness_verified", json!(ok)),
                            ])
                        })
                        .collect(),
                ),
            ),
        ]);
        return Ok(serde_json::to_string_pretty(&val).unwrap());
    }

    let mut out = String::new();
    let _ = writeln!(out, "{:<10} {:<18} witness", "pair", "verdict");
    for (p, s, ok) in &results {
        let _ = writeln!(
            out,
            "{:<10} {:<18} {}",
            p.to_string(),
            s.to_string(),
            if *ok { "ok" } else { "FAILED" }
        );
    }
    let _ = writeln!(out, "---");
    let _ = writeln!(
        out,
        "{} pairs: {} bi-orderable, {} not bi-orderable, {} unknown; {} witness failures",
        results.len(),
        totals.bi_orderable,
        totals.not_bi_orderable,
        totals.unknown,
        totals.witness_failures
    );
    if totals.witness_failures > 0 {
        return Err(CliError::Verification(format!(
            "{} witness failures:\n{out}",
            totals.witness_failures
        )));
    }
    Ok(out)
}
