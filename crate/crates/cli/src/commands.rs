use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::json;
use ybe_growth::algebra::{
    make_dihedral_group, make_symmetric_group, FiniteGroupTable, GroupJson, QuandleJson, QuandleSolution,
};
use ybe_growth::group_growth::{
    as_full_conjugation_gf, as_reflections_group_gf, as_transpositions_group_gf, DefectContext, DefectOptions,
    DefectSeriesResult, DEFAULT_DEFECT_BUDGET,
};
use ybe_growth::oracle::{
    full_conjugation_generators, group_ball_enumerate, monoid_orbit_enumerate, reflection_generators,
    transposition_generators, BallGenerator, DEFAULT_BALL_BUDGET, DEFAULT_ORBIT_BUDGET,
};
use ybe_growth::reflection::{
    essentialise, frs_embed, invariants, is_full, monoid_growth_reflections, monoid_growth_reflections_by_levels,
    normal_form, Modulus, ReflectionWord,
};
use ybe_growth::series::{RationalGf, TruncatedSeries};
use ybe_growth::transposition::{
    egf_coefficient, egf_transposition_monoids, fts_embed, monoid_growth_transpositions, transposition_normal_form,
    word_partition, TranspositionWord,
};
use ybe_growth::verify::{run_criterion, VerificationReport, VerifyOptions, CRITERIA};
use ybe_growth::{Error, Result};

use crate::output::{joined, series_csv, to_value, verdict, OracleCheck, Outcome};
use crate::{Command, GlobalOpts, Solution};

pub fn run(command: Command, opts: &GlobalOpts) -> Result<Outcome> {
    match command {
        Command::Group => group(opts),
        Command::Monoid => monoid(opts),
        Command::DefectTable => defect_table(opts),
        Command::Egf => egf(opts),
        Command::NormalForm => word_report(opts, true),
        Command::Invariants => word_report(opts, false),
        Command::Verify => verify(opts),
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn need_d(opts: &GlobalOpts) -> Result<usize> {
    match opts.d {
        Some(d) if d >= 1 => Ok(d as usize),
        Some(_) => Err(usage("--d must be at least 1")),
        None => Err(usage("--d is required")),
    }
}

fn need_solution(opts: &GlobalOpts, allowed: &[Solution]) -> Result<Solution> {
    let s = opts.solution.ok_or_else(|| usage("--solution is required"))?;
    if allowed.contains(&s) {
        Ok(s)
    } else {
        Err(usage(format!("--solution {} is not supported by this command", s.name())))
    }
}

fn orbit_budget(opts: &GlobalOpts) -> u64 {
    opts.budget_states.unwrap_or(DEFAULT_ORBIT_BUDGET)
}

fn ball_budget(opts: &GlobalOpts) -> u64 {
    opts.budget_states.unwrap_or(DEFAULT_BALL_BUDGET)
}

fn defect_options(opts: &GlobalOpts) -> DefectOptions {
    let budget_states = opts.budget_states.map_or(DEFAULT_DEFECT_BUDGET, |b| b.min(usize::MAX as u64) as usize);
    DefectOptions { exec: opts.exec(), budget_states }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let raw = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| usage(format!("cannot parse {}: {e}", path.display())))
}

fn need_input(opts: &GlobalOpts) -> Result<&Path> {
    opts.input.as_deref().ok_or_else(|| usage("--input is required for custom-json"))
}

fn finite_group(opts: &GlobalOpts, solution: Solution) -> Result<FiniteGroupTable> {
    match solution {
        Solution::Permutations | Solution::Transpositions => make_symmetric_group(need_d(opts)?),
        Solution::Dihedral | Solution::Reflections => make_dihedral_group(need_d(opts)?),
        Solution::CustomJson => FiniteGroupTable::from_json(&read_json::<GroupJson>(need_input(opts)?)?),
    }
}

#[derive(Serialize)]
struct GroupResult {
    solution: Solution,
    d: usize,
    group_order: usize,
    closed_form: Option<RationalGf>,
    closed_form_display: Option<String>,
    expansion: TruncatedSeries,
    #[serde(skip_serializing_if = "Option::is_none")]
    defect: Option<DefectSeriesResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleCheck>,
}

fn group(opts: &GlobalOpts) -> Result<Outcome> {
    let solution = need_solution(
        opts,
        &[Solution::Transpositions, Solution::Reflections, Solution::Permutations, Solution::Dihedral],
    )?;
    let d = need_d(opts)?;
    let g = finite_group(opts, solution)?;
    let order = opts.order;
    let (closed_form, expansion, defect, gens): (Option<RationalGf>, TruncatedSeries, _, Vec<BallGenerator>) =
        match solution {
            Solution::Transpositions => {
                let gf = as_transpositions_group_gf(d)?;
                let e = gf.expand(order);
                (Some(gf), e, None, if opts.verify { transposition_generators(&g) } else { Vec::new() })
            }
            Solution::Reflections => {
                let gf = as_reflections_group_gf(d)?;
                let e = gf.expand(order);
                (Some(gf), e, None, if opts.verify { reflection_generators(&g)? } else { Vec::new() })
            }
            _ => {
                let full = as_full_conjugation_gf(&g, order, defect_options(opts))?;
                let gens = if opts.verify { full_conjugation_generators(&g)? } else { Vec::new() };
                (full.closed_form, full.series, Some(full.defect), gens)
            }
        };
    let oracle = if opts.verify {
        let ball = group_ball_enumerate(&g, &gens, order, opts.exec(), ball_budget(opts))?;
        Some(OracleCheck::new("ball", &expansion, &ball.sphere_sizes, true))
    } else {
        None
    };
    let mut text = format!("structure group of the {} solution, d = {d}, |G| = {}\n", solution.name(), g.order());
    match &closed_form {
        Some(gf) => text.push_str(&format!("closed form: {gf}\n")),
        None => text.push_str("closed form: unavailable (truncated series only)\n"),
    }
    if let Some(p) = defect.as_ref().and_then(|x| x.presentation.as_ref()) {
        text.push_str(&format!("defect polynomial part: {}\n", p.polynomial));
        for tail in &p.tails {
            let den = if tail.period == 1 { "1 - t".to_string() } else { format!("1 - t^{}", tail.period) };
            text.push_str(&format!("defect tail: ({}) / ({den})\n", tail.numerator));
        }
    }
    if let Some(diag) = defect.as_ref().and_then(|x| x.diagnostic.as_ref()) {
        text.push_str(&format!("note: {diag}\n"));
    }
    text.push_str(&format!("expansion: {}\n", joined(&expansion)));
    if let Some(o) = &oracle {
        text.push_str(&format!("oracle: {}\nverification: {}\n", o.actual.join(", "), verdict(o.passed)));
    }
    let csv = series_csv(&expansion, oracle.as_ref());
    let verified = oracle.as_ref().map(|o| o.passed);
    let closed_form_missing = closed_form.is_none();
    let res = GroupResult {
        solution,
        d,
        group_order: g.order(),
        closed_form_display: closed_form.as_ref().map(|x| x.to_string()),
        closed_form,
        expansion,
        defect,
        oracle,
    };
    Ok(Outcome { result: to_value(&res), text, csv, verified, budget_hit: false, closed_form_missing })
}

#[derive(Serialize)]
struct MonoidResult {
    solution: Solution,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    generators: usize,
    closed_form: Option<RationalGf>,
    closed_form_display: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expansion: Option<TruncatedSeries>,
    /// Orbit-oracle counts for custom solutions.
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoff: Option<usize>,
    /// Whether the two reflection formulas agree as rational functions.
    #[serde(skip_serializing_if = "Option::is_none")]
    routes_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleCheck>,
}

fn monoid(opts: &GlobalOpts) -> Result<Outcome> {
    let solution = need_solution(opts, &[Solution::Transpositions, Solution::Reflections, Solution::CustomJson])?;
    let order = opts.order;
    if solution == Solution::CustomJson {
        if opts.closed_form {
            return Err(usage("custom solutions have no closed form"));
        }
        let sol = QuandleSolution::from_json(&read_json::<QuandleJson>(need_input(opts)?)?)?;
        let e = monoid_orbit_enumerate(&sol, order, opts.exec(), orbit_budget(opts));
        let counts: Vec<String> = e.per_length_counts.iter().map(u64::to_string).collect();
        let mut text =
            format!("structure monoid of a custom solution with {} generators\nclosed form: none\n", sol.size());
        text.push_str(&format!("oracle counts: {}\n", counts.join(", ")));
        if let Some(c) = e.cutoff {
            text.push_str(&format!("budget exceeded at length {c}\n"));
        }
        let mut csv = String::from("degree,count\n");
        for (i, c) in counts.iter().enumerate() {
            csv.push_str(&format!("{i},{c}\n"));
        }
        let res = MonoidResult {
            solution,
            d: None,
            generators: sol.size(),
            closed_form: None,
            closed_form_display: None,
            expansion: None,
            counts: Some(e.per_length_counts.clone()),
            cutoff: e.cutoff,
            routes_agree: None,
            note: Some("no closed form"),
            oracle: None,
        };
        return Ok(Outcome {
            result: to_value(&res),
            text,
            csv,
            verified: None,
            budget_hit: e.cutoff.is_some(),
            closed_form_missing: true,
        });
    }
    let d = need_d(opts)?;
    let (gf, routes_agree, sol) = match solution {
        Solution::Transpositions => {
            let gf = monoid_growth_transpositions(d)?;
            let sol = if opts.verify { Some(ybe_growth::algebra::transposition_solution(d)?) } else { None };
            (gf, None, sol)
        }
        _ => {
            let gf = monoid_growth_reflections(d as u64)?;
            let agree = gf == monoid_growth_reflections_by_levels(d as u64)?;
            let sol = if opts.verify { Some(ybe_growth::reflection::reflection_quandle(d as u64)?) } else { None };
            (gf, Some(agree), sol)
        }
    };
    let expansion = gf.expand(order);
    let mut budget_hit = false;
    let oracle = sol.map(|sol| {
        let e = monoid_orbit_enumerate(&sol, order, opts.exec(), orbit_budget(opts));
        budget_hit = e.cutoff.is_some();
        OracleCheck::new("orbit", &expansion, &e.per_length_counts, e.is_complete())
    });
    let mut text = format!("structure monoid of the {} solution, d = {d}\n", solution.name());
    text.push_str(&format!("closed form: {gf}\nexpansion: {}\n", joined(&expansion)));
    if let Some(a) = routes_agree {
        text.push_str(&format!("divisor-sum route agrees: {a}\n"));
    }
    if let Some(o) = &oracle {
        text.push_str(&format!("oracle: {}\nverification: {}\n", o.actual.join(", "), verdict(o.passed)));
        if !o.complete {
            text.push_str("oracle stopped early: state budget exceeded\n");
        }
    }
    let csv = series_csv(&expansion, oracle.as_ref());
    let verified = match (&oracle, routes_agree) {
        (Some(o), r) => Some(o.passed && r.unwrap_or(true)),
        (None, Some(false)) => Some(false),
        _ => None,
    };
    let res = MonoidResult {
        solution,
        d: Some(d),
        generators: if solution == Solution::Transpositions { d * (d - 1) / 2 } else { d },
        closed_form_display: Some(gf.to_string()),
        closed_form: Some(gf),
        expansion: Some(expansion),
        counts: None,
        cutoff: None,
        routes_agree,
        note: None,
        oracle,
    };
    Ok(Outcome { result: to_value(&res), text, csv, verified, budget_hit, closed_form_missing: false })
}

#[derive(Serialize)]
struct ClassInfo {
    index: usize,
    size: usize,
    representative: String,
    inverse: usize,
}

#[derive(Serialize)]
struct DefectPoint {
    kbar: Vec<i64>,
    product_classes: Vec<usize>,
    product_size: usize,
    defect: usize,
}

#[derive(Serialize)]
struct DefectTableResult {
    group_order: usize,
    derived_size: usize,
    classes: Vec<ClassInfo>,
    /// `products[i][j]`: classes meeting `C_i · C_j`.
    products: Vec<Vec<Vec<usize>>>,
    max_degree: usize,
    nonzero_defects: Vec<DefectPoint>,
    truncated: TruncatedSeries,
}

fn class_set(classes: &[usize]) -> String {
    let s: Vec<String> = classes.iter().map(usize::to_string).collect();
    format!("{{{}}}", s.join(","))
}

fn defect_table(opts: &GlobalOpts) -> Result<Outcome> {
    let solution = need_solution(opts, &[Solution::Permutations, Solution::Dihedral, Solution::CustomJson])?;
    let g = finite_group(opts, solution)?;
    let ctx = DefectContext::new(&g)?;
    let dec = ctx.decomposition();
    let table = ctx.table();
    let c = ctx.num_classes();
    let budget = defect_options(opts).budget_states;
    let classes: Vec<ClassInfo> = (0..c)
        .map(|i| ClassInfo {
            index: i,
            size: dec.size(i),
            representative: g.label(dec.representative(i)).to_string(),
            inverse: table.inverse(i),
        })
        .collect();
    let products: Vec<Vec<Vec<usize>>> =
        (0..c).map(|i| (0..c).map(|j| table.get(i, j).iter().collect()).collect()).collect();
    let points = ctx.nonzero_points(0, opts.order, opts.exec(), budget)?;
    let truncated = ctx.truncated(opts.order, opts.exec(), budget)?;
    let nonzero_defects: Vec<DefectPoint> = points
        .into_iter()
        .map(|r| DefectPoint {
            product_classes: r.product_class_mask.iter().collect(),
            kbar: r.kbar,
            product_size: r.product_size,
            defect: r.defect,
        })
        .collect();

    let mut text = format!("group of order {}, |[G,G]| = {}, {c} classes\n", g.order(), ctx.derived_size());
    for ci in &classes {
        text.push_str(&format!("C_{}: size {}, representative {}\n", ci.index, ci.size, ci.representative));
    }
    text.push_str("class products:\n");
    for row in &products {
        let cells: Vec<String> = row.iter().map(|x| class_set(x)).collect();
        text.push_str(&format!("  {}\n", cells.join(" ")));
    }
    text.push_str(&format!("nonzero defects with |k| <= {}:\n", opts.order));
    for p in &nonzero_defects {
        text.push_str(&format!("  {:?} -> {}\n", p.kbar, p.defect));
    }
    text.push_str(&format!("defect series: {}\n", joined(&truncated)));

    let mut csv = String::from("section,i,j,classes\n");
    for (i, row) in products.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            csv.push_str(&format!("product,{i},{j},\"{}\"\n", class_set(x)));
        }
    }
    csv.push_str("section,kbar,product_size,defect\n");
    for p in &nonzero_defects {
        let k: Vec<String> = p.kbar.iter().map(i64::to_string).collect();
        csv.push_str(&format!("defect,\"({})\",{},{}\n", k.join(","), p.product_size, p.defect));
    }
    let res = DefectTableResult {
        group_order: g.order(),
        derived_size: ctx.derived_size(),
        classes,
        products,
        max_degree: opts.order,
        nonzero_defects,
        truncated,
    };
    Ok(Outcome { result: to_value(&res), text, csv, ..Default::default() })
}

#[derive(Serialize)]
struct EgfRow {
    d: usize,
    coefficients: TruncatedSeries,
    expected: TruncatedSeries,
    matches: bool,
}

fn egf(opts: &GlobalOpts) -> Result<Outcome> {
    let max_d = opts.d.unwrap_or(4) as usize;
    let order = opts.order;
    let egf = egf_transposition_monoids(order, max_d)?;
    let mut rows = Vec::new();
    for d in 0..=max_d {
        let coefficients = egf_coefficient(&egf, d);
        let expected =
            if d == 0 { TruncatedSeries::one(order) } else { monoid_growth_transpositions(d)?.expand(order) };
        let matches = coefficients == expected;
        rows.push(EgfRow { d, coefficients, expected, matches });
    }
    let ok = rows.iter().all(|r| r.matches);
    let mut text = format!("d!·[x^d] of the exponential generating function, t-order {order}\n");
    let mut csv = String::from("d,degree,coefficient,expected\n");
    for r in &rows {
        text.push_str(&format!("d = {}: {} [{}]\n", r.d, joined(&r.coefficients), verdict(r.matches)));
        let exp = crate::output::coeff_strings(&r.expected);
        for (i, c) in crate::output::coeff_strings(&r.coefficients).iter().enumerate() {
            csv.push_str(&format!("{},{i},{c},{}\n", r.d, exp[i]));
        }
    }
    text.push_str(&format!("cross-check: {}\n", verdict(ok)));
    let result = json!({ "order_t": order, "max_d": max_d, "rows": to_value(&rows), "cross_check": ok });
    Ok(Outcome { result, text, csv, verified: Some(ok), ..Default::default() })
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `field: value` text and `field,value` CSV from ordered pairs.
fn pairs_outcome(result: serde_json::Value, pairs: &[(&str, String)]) -> Outcome {
    let mut text = String::new();
    let mut csv = String::from("field,value\n");
    for (k, v) in pairs {
        text.push_str(&format!("{k}: {v}\n"));
        csv.push_str(&format!("{k},{}\n", csv_quote(v)));
    }
    Outcome { result, text, csv, ..Default::default() }
}

fn word_report(opts: &GlobalOpts, with_normal_form: bool) -> Result<Outcome> {
    let solution = need_solution(opts, &[Solution::Reflections, Solution::Transpositions])?;
    let raw = opts.word.as_deref().ok_or_else(|| usage("--word is required"))?;
    if solution == Solution::Transpositions {
        return transposition_word_report(opts, raw, with_normal_form);
    }
    let modulus = if opts.infinite { Modulus::Infinite } else { Modulus::Finite(need_d(opts)? as u64) };
    let w = ReflectionWord::parse(modulus, raw)?;
    let inv = invariants(&w);
    let ess = essentialise(&w).ok();
    let full = is_full(&w);
    let image = frs_embed(&w).ok();
    let nf = with_normal_form.then(|| normal_form(&w));
    let key = inv.key();
    let mut pairs = vec![
        ("input", w.pretty()),
        ("length", inv.length.to_string()),
        ("weight", inv.weight.to_string()),
        ("density", inv.density.to_string()),
        ("anchor", inv.anchor.to_string()),
        ("essential parity counts", format!("{} even, {} odd", inv.ess_even, inv.ess_odd)),
        ("full", full.to_string()),
    ];
    if let Some(e) = &ess {
        pairs.push(("essentialisation", e.pretty()));
    }
    if let Some(nf) = &nf {
        pairs.push(("normal form", nf.word.pretty()));
    }
    let result = json!({
        "solution": solution,
        "modulus": modulus,
        "input": { "letters": w.letters(), "pretty": w.pretty() },
        "invariants": inv,
        "key": [key.0, key.1, key.2, key.3, key.4, key.5],
        "full": full,
        "essentialisation": ess.map(|e| json!({ "letters": e.letters(), "pretty": e.pretty() })),
        "frs_image": image,
        "normal_form": nf.map(|n| json!({ "letters": n.word.letters(), "pretty": n.word.pretty(), "shape": n.shape })),
    });
    Ok(pairs_outcome(result, &pairs))
}

fn transposition_word_report(opts: &GlobalOpts, raw: &str, with_normal_form: bool) -> Result<Outcome> {
    let d = need_d(opts)?;
    let w = TranspositionWord::parse(d, raw)?;
    let partition = word_partition(&w);
    let image = fts_embed(&w).ok();
    let nf = with_normal_form.then(|| transposition_normal_form(&w));
    let mut pairs = vec![
        ("input", w.to_string()),
        ("length", w.len().to_string()),
        ("partition", partition.to_string()),
        ("full", partition.is_full().to_string()),
    ];
    if let Some(img) = &image {
        pairs.push(("permutation", img.perm.to_string()));
    }
    if let Some(nf) = &nf {
        pairs.push(("normal form", nf.to_string()));
    }
    let result = json!({
        "solution": Solution::Transpositions,
        "d": d,
        "input": w.to_string(),
        "length": w.len(),
        "partition": partition.to_string(),
        "full": partition.is_full(),
        "image": image.map(|i| json!({ "permutation": i.perm.to_string(), "length": i.length })),
        "normal_form": nf.map(|n| n.to_string()),
    });
    Ok(pairs_outcome(result, &pairs))
}

fn verify(opts: &GlobalOpts) -> Result<Outcome> {
    let vo = VerifyOptions {
        exec: opts.exec(),
        seed: opts.seed,
        orbit_budget: orbit_budget(opts),
        ball_budget: ball_budget(opts),
        defect_budget: defect_options(opts).budget_states,
        ..VerifyOptions::default()
    };
    let ids: Vec<u8> =
        if opts.criterion.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { opts.criterion.clone() };
    if let Some(bad) = ids.iter().find(|id| !CRITERIA.iter().any(|c| c.0 == **id)) {
        return Err(usage(format!("no criterion {bad}")));
    }
    let mut criteria = Vec::new();
    let mut text = String::new();
    let mut csv = String::from(if opts.timing {
        "criterion,title,passed,elapsed_secs,limit_secs\n"
    } else {
        "criterion,title,passed\n"
    });
    for id in ids {
        let mut r = run_criterion(id, &vo);
        let ok = r.passed && r.within_limit();
        r.passed = ok;
        let secs = r.elapsed_secs.unwrap_or(0.0);
        if opts.timing {
            text.push_str(&format!(
                "{} criterion {}: {} [{secs:.2}s, limit {}s]\n",
                verdict(ok),
                r.id,
                r.title,
                r.limit_secs
            ));
            csv.push_str(&format!("{},{},{ok},{secs:.3},{}\n", r.id, csv_quote(&r.title), r.limit_secs));
        } else {
            text.push_str(&format!("{} criterion {}: {}\n", verdict(ok), r.id, r.title));
            csv.push_str(&format!("{},{},{ok}\n", r.id, csv_quote(&r.title)));
            r.strip_timing();
        }
        if let Some(e) = &r.error {
            text.push_str(&format!("  error: {e}\n"));
        }
        for c in r.comparisons.iter().filter(|c| !c.passed) {
            text.push_str(&format!("  mismatch {}: expected {:?}, got {:?}\n", c.label, c.expected, c.actual));
        }
        criteria.push(r);
    }
    let passed = criteria.iter().all(|c| c.passed);
    text.push_str(&format!("overall: {}\n", verdict(passed)));
    let report = VerificationReport { passed, criteria };
    Ok(Outcome { result: to_value(&report), text, csv, verified: Some(passed), ..Default::default() })
}
