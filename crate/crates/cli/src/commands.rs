use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use prop_core::selftest;
use prop_core::{
    build_one_skeleton, build_quotient, e1_dimensions, fox_derivative, gs_report, internal_rank_report, leading_form,
    magnus_expand, parse_presentation, parse_word, search_obstruction, valuation, wbar_homology, FiniteGroupTable,
    GroupWord, HomCandidate, Presentation, Prime, QuotientOptions, SearchOptions, Valuation, Verdict,
};
use serde::Serialize;
use serde_json::json;

use crate::{Cli, Command};

pub struct Output {
    pub text: String,
    pub status: u8,
}

fn ok(text: String) -> Result<Output> {
    Ok(Output { text, status: 0 })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn read_presentation(path: &Path) -> Result<Presentation> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_presentation(&text).with_context(|| format!("{}", path.display()))
}

fn override_requested(cli: &Cli) -> bool {
    cli.override_guardrail || std::env::var("PROP_GUARDRAIL_OVERRIDE").is_ok_and(|v| v == "1")
}

pub fn run(cli: &Cli) -> Result<Output> {
    let over = override_requested(cli);
    let quotient_opts = QuotientOptions { override_guardrail: over };
    match &cli.command {
        Command::Expand { pres, word, truncation } => {
            let pres = read_presentation(&pres.pres)?;
            let w = parse_word(word, pres.generators())?;
            let s = magnus_expand(&w, pres.prime(), *truncation, pres.num_generators())?;
            let v = valuation(&w, pres.prime(), *truncation);
            let word = pres.display_word(&w).to_string();
            if cli.json {
                return ok(to_json(&json!({"word": word, "valuation": v, "series": s.to_json()})));
            }
            ok(format!("word: {word}\nvaluation of 1 - w: {v}\n{s}\n"))
        }
        Command::Fox { pres, relator, word, wrt } => {
            let pres = read_presentation(&pres.pres)?;
            let w =
                match (relator, word) {
                    (Some(i), _) => pres.relators().get(*i).cloned().ok_or_else(|| {
                        anyhow!("relator index {i} out of range ({} relators)", pres.relators().len())
                    })?,
                    (None, Some(text)) => parse_word(text, pres.generators())?,
                    (None, None) => bail!("give --relator or --word"),
                };
            let j = pres.generator_index(wrt).ok_or_else(|| anyhow!("unknown generator {wrt}"))?;
            let dw = fox_derivative(&w, j, pres.num_generators(), pres.prime())?;
            let names = pres.generators();
            let pretty = dw.display_with(names).to_string();
            if cli.json {
                let terms: Vec<_> =
                    dw.terms().map(|(g, c)| json!({"word": g.display_with(names).to_string(), "coef": c})).collect();
                return ok(to_json(&json!({
                    "word": pres.display_word(&w).to_string(),
                    "wrt": wrt,
                    "p": pres.prime().get(),
                    "derivative": pretty,
                    "terms": terms,
                })));
            }
            ok(format!("d/d{wrt} ({}) = {pretty}\n", pres.display_word(&w)))
        }
        Command::Grade { pres, truncation } => {
            let pres = read_presentation(&pres.pres)?;
            let q = build_quotient(&pres, *truncation, quotient_opts)?;
            let rep = q.report();
            if cli.json {
                let mut v = serde_json::to_value(&rep)?;
                v["warnings"] = json!(q.warnings());
                return ok(to_json(&v));
            }
            let mut out = String::new();
            writeln!(out, "b = {:?}", rep.b)?;
            writeln!(out, "c = {:?}", rep.c)?;
            writeln!(out, "{:>3} {:>10} {:>10}", "n", "b_n", "c_n")?;
            for n in 0..rep.b.len() {
                writeln!(out, "{n:>3} {:>10} {:>10}", rep.b[n], rep.c[n])?;
            }
            for w in q.warnings() {
                writeln!(out, "warning: {w}")?;
            }
            ok(out)
        }
        Command::Obstruct { pres, truncation, m, threads } => {
            let pres = read_presentation(&pres.pres)?;
            let [r] = pres.relators() else {
                bail!("obstruct needs exactly one relator, found {}", pres.relators().len());
            };
            let v = valuation(r, pres.prime(), *truncation);
            if let Valuation::AtLeast(_) = v {
                return Err(
                    prop_core::Error::ValuationExceedsTruncation { valuation: v, truncation: *truncation }.into()
                );
            }
            let eta = leading_form(r, pres.prime(), *truncation, pres.num_generators())?;
            let opts = SearchOptions { threads: *threads, override_guardrail: over };
            let rep = search_obstruction(&eta, pres.num_generators(), *m, opts)?;
            if cli.json {
                return ok(to_json(&rep));
            }
            let mut out = String::new();
            writeln!(out, "leading form (degree {}): {eta}", rep.k)?;
            writeln!(out, "column spaces tested: {}", rep.spaces)?;
            writeln!(out, "verdict for m = {}: {}", rep.m, rep.verdict)?;
            if rep.verdict == Verdict::CandidateExists {
                writeln!(out, "witnesses: {}", rep.witnesses.len())?;
                for w in &rep.witnesses {
                    let rows: Vec<String> = w.to_rows().iter().map(|r| format!("{r:?}")).collect();
                    writeln!(out, "  {}", rows.join(" "))?;
                }
            }
            ok(out)
        }
        Command::Rank { pres, truncation, m_max, images, threads } => {
            let pres = read_presentation(&pres.pres)?;
            let candidates = if images.is_empty() { vec![] } else { vec![parse_candidate(&pres, images, *m_max)?] };
            let opts = SearchOptions { threads: *threads, override_guardrail: over };
            let rep = internal_rank_report(&pres, *truncation, *m_max, &candidates, opts)?;
            if cli.json {
                return ok(to_json(&rep));
            }
            let mut out = String::new();
            writeln!(out, "leading degree {}", rep.k)?;
            writeln!(out, "{:>3} {:>8} {:>18} {:>10}  candidate", "m", "spaces", "verdict", "witnesses")?;
            for e in &rep.entries {
                let verdict = match e.verdict {
                    Verdict::NoEpiCertified => "NO_EPI_CERTIFIED",
                    Verdict::CandidateExists => "CANDIDATE_EXISTS",
                };
                let cand = e.candidate.map_or_else(|| "-".to_string(), |c| c.to_string());
                writeln!(out, "{:>3} {:>8} {:>18} {:>10}  {cand}", e.m, e.spaces, verdict, e.witnesses)?;
            }
            let show = |o: Option<usize>| o.map_or_else(|| "none".to_string(), |v| v.to_string());
            writeln!(out, "largest m with no epimorphism certified: {}", show(rep.largest_no_epi))?;
            writeln!(out, "upper bound from the smallest certified m: {}", show(rep.upper_bound))?;
            writeln!(out, "largest m with a confirmed epimorphism: {}", show(rep.largest_confirmed))?;
            writeln!(out, "CANDIDATE_EXISTS is a necessary condition only")?;
            ok(out)
        }
        Command::Gs { pres, truncation } => {
            let pres = read_presentation(&pres.pres)?;
            let rep = gs_report(&pres, *truncation, quotient_opts)?;
            ok(if cli.json { to_json(&rep) } else { rep.table() })
        }
        Command::E1 { h, n, m } => {
            let dim = e1_dimensions(h, *n, *m)?;
            if cli.json {
                return ok(to_json(&json!({"h": h, "n": n, "m": m, "dim": dim.to_string()})));
            }
            ok(format!("dim E1[{n},{m}] = {dim}\n"))
        }
        Command::Skeleton { pres, levels } => {
            let pres = read_presentation(&pres.pres)?;
            let sk = build_one_skeleton(&pres, *levels)?;
            let rep = sk.check_identities();
            if cli.json {
                return ok(to_json(&json!({"skeleton": sk.to_json(), "identities": rep})));
            }
            let mut out = String::new();
            for n in 0..=sk.max_level() {
                writeln!(out, "level {n}: {} generators ({})", sk.num_generators(n), sk.labels(n).join(", "))?;
            }
            writeln!(out, "identity evaluations: {}", rep.checked)?;
            writeln!(out, "violations: {}", rep.violations.len())?;
            for v in &rep.violations {
                writeln!(out, "  {} at {}: {} vs {}", v.identity, v.generator, v.lhs, v.rhs)?;
            }
            ok(out)
        }
        Command::Wbar { group, cyclic, p, q_max } => {
            let g = match (group, cyclic) {
                (Some(path), _) => {
                    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
                    FiniteGroupTable::from_json(&text)?
                }
                (None, Some(0)) => bail!("cyclic group order must be positive"),
                (None, Some(n)) => FiniteGroupTable::cyclic(*n),
                (None, None) => bail!("give --group or --cyclic"),
            };
            let prime = Prime::new(*p)?;
            let dims = wbar_homology(&g, prime, *q_max, over)?;
            if cli.json {
                return ok(to_json(&json!({"order": g.order(), "p": p, "q_max": q_max, "dims": dims})));
            }
            let mut out = String::new();
            for (q, d) in dims.iter().enumerate() {
                writeln!(out, "dim H_{q}(G; F_{p}) = {d}")?;
            }
            ok(out)
        }
        Command::Selftest { seed } => {
            let results = selftest::run_all(*seed);
            let status = if results.iter().all(|r| r.passed) { 0 } else { 1 };
            if cli.json {
                return Ok(Output { text: to_json(&results), status });
            }
            let mut out = String::new();
            for r in &results {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{:>2} {mark} {} ({})", r.id, r.name, r.detail)?;
            }
            Ok(Output { text: out, status })
        }
    }
}

/// Parses `--image x=w` flags into a candidate; targets are `y1..ym` with `m`
/// the largest index used.
fn parse_candidate(pres: &Presentation, images: &[String], m_max: usize) -> Result<(usize, HomCandidate)> {
    let targets: Vec<String> = (1..=m_max).map(|i| format!("y{i}")).collect();
    let mut slots: Vec<Option<GroupWord>> = vec![None; pres.num_generators()];
    for arg in images {
        let (name, word) = arg.split_once('=').ok_or_else(|| anyhow!("image {arg:?} is not of the form x=word"))?;
        let name = name.trim();
        let j = pres.generator_index(name).ok_or_else(|| anyhow!("unknown generator {name}"))?;
        if slots[j].is_some() {
            bail!("generator {name} has two images");
        }
        slots[j] = Some(parse_word(word, &targets).with_context(|| format!("image of {name}"))?);
    }
    let images: Vec<GroupWord> = slots
        .into_iter()
        .enumerate()
        .map(|(j, w)| w.ok_or_else(|| anyhow!("no image given for {}", pres.generators()[j])))
        .collect::<Result<_>>()?;
    let m = images.iter().filter_map(GroupWord::max_generator).max().map_or(0, |g| g + 1);
    if m == 0 {
        bail!("the candidate maps every generator to the identity");
    }
    Ok((m, HomCandidate { images }))
}
