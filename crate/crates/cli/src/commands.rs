use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};
use sumgraph::claims::{all_gating_passed, list_claims, run_claims, ClaimRecord};
use sumgraph::constructors as cons;
use sumgraph::exactla::{enumerate_primitive_labellings, labelling_kernel, random_cycle_search, span_coordinates};
use sumgraph::fib::{delta_ratio_report, fib_params, FibParams};
use sumgraph::fixtures::{fixtures, Q4_U_BASIS};
use sumgraph::graphs::{emit_graph6, emit_report, parse_graph6_lines, ReportFormat};
use sumgraph::labelling::labelling_to_json;
use sumgraph::product::product_labelling_many;
use sumgraph::search::{self, Bounded, Domain, SearchProblem, SearchResult};
use sumgraph::{induced_graph, is_strong, verify, Graph, Labelling};

use crate::input::{self, family};
use crate::{ClaimsCommand, Command, Construct, GraphFormat, LabelledGraphArgs};

/// Writes to standard output, stopping quietly once a reader such as `head`
/// has closed the pipe.
fn out(text: &str) {
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

fn emit(as_json: bool, value: &Value, text: impl FnOnce() -> String) {
    if as_json {
        out(&(serde_json::to_string_pretty(value).expect("json values serialise") + "\n"));
    } else {
        out(&text());
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn g6(g: &Graph) -> String {
    emit_graph6(g).unwrap_or_else(|_| "(too large for graph6)".into())
}

fn render_graph(g: &Graph, lab: Option<&Labelling>, format: GraphFormat) -> String {
    match format {
        GraphFormat::G6 => format!("{}\n", g6(g)),
        GraphFormat::Json => emit_report(g, lab, ReportFormat::Json) + "\n",
        GraphFormat::Dot => emit_report(g, lab, ReportFormat::Dot),
    }
}

pub fn run(cmd: Command, as_json: bool) -> Result<ExitCode> {
    match cmd {
        Command::Verify(a) => verify_cmd(a, as_json),
        Command::Build(a) => {
            let g = family(&a.family)?;
            let format = if as_json { GraphFormat::Json } else { a.format };
            out(&render_graph(&g, None, format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct(c) => construct(c, as_json),
        Command::Search(a) => {
            let g = a.graph.require()?;
            let domain: Domain = a.domain.parse()?;
            let p = SearchProblem::new(g.clone(), domain.clone())?
                .relaxed(a.relaxed)
                .strong(a.strong)
                .nonzero(a.nonzero)
                .budget(a.budget);
            let out = search::solve(&p);
            let (kind, lab) = match &out.result {
                SearchResult::Found(l) => ("found", Some(l)),
                SearchResult::ExhaustedWithinBound(_) => ("exhausted", None),
                SearchResult::Aborted => ("aborted", None),
            };
            let value = json!({
                "graph6": g6(&g),
                "domain": domain,
                "result": kind,
                "labelling": lab.map(|l| labelling_to_json(l, None)),
                "nodes_expanded": out.nodes_expanded,
            });
            emit(as_json, &value, || match (&out.result, lab) {
                (_, Some(l)) => format!("found over {domain}: [{}]\n{} nodes\n", l.render(), out.nodes_expanded),
                (SearchResult::Aborted, _) => format!("budget spent after {} nodes; no answer\n", out.nodes_expanded),
                _ => format!("no labelling over {domain}: exhausted after {} nodes\n", out.nodes_expanded),
            });
            Ok(status(!matches!(out.result, SearchResult::Aborted)))
        }
        Command::Radius(a) => {
            let g = a.graph.require()?;
            if a.cap > search::MAX_DOMAIN / 2 {
                bail!("radius cap {} is above {}", a.cap, search::MAX_DOMAIN / 2);
            }
            let r = search::radius_with(&g, a.cap, a.relaxed);
            bounded(as_json, &g, &r, a.cap, "radius");
            Ok(ExitCode::SUCCESS)
        }
        Command::SumNumber(a) => {
            let g = a.graph.require()?;
            if a.bound < 1 || a.bound > search::MAX_DOMAIN {
                bail!("label bound must be in 1..={}", search::MAX_DOMAIN);
            }
            let s = search::sum_number_bounded(&g, a.max_isolated, a.bound);
            bounded(as_json, &g, &s, a.max_isolated as u64, "sum number");
            Ok(ExitCode::SUCCESS)
        }
        Command::ModSweep(a) => {
            let g = a.graph.require()?;
            let s = search::mod_sum_sweep(&g, a.cap, a.relaxed);
            let value = json!({
                "graph6": g6(&g),
                "relaxed": a.relaxed,
                "m_cap": s.m_cap,
                "smallest_modulus": s.found.as_ref().map(|f| f.0),
                "labelling": s.found.as_ref().map(|f| labelling_to_json(&f.1, None)),
                "theorem_bound": s.theorem_bound.to_string(),
                "conclusive": s.conclusive,
                "nodes_expanded": s.nodes_expanded,
            });
            emit(as_json, &value, || {
                let head = match &s.found {
                    Some((m, l)) => format!("smallest modulus {m}: [{}]\n", l.render()),
                    None => format!("no Z_m labelling for m <= {}\n", s.m_cap),
                };
                format!("{head}theorem bound {}; conclusive: {}\n", s.theorem_bound, s.conclusive)
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Count(a) => {
            let graphs = input::graph6_file(&a.file)?;
            let c = search::count_corpus_with(&graphs, !a.no_relaxed, a.radius_cap, a.allow_zero)?;
            let mut value = serde_json::to_value(&c)?;
            value["file"] = json!(a.file.display().to_string());
            emit(as_json, &value, || {
                let risg = c.risg.map(|r| format!(" risg={r}")).unwrap_or_default();
                let zero = if c.zero_allowed { "0 allowed" } else { "nonzero labels" };
                format!("n={} total={} isg={}{risg} (radius <= {}, {zero})\n", c.n, c.total, c.isg, c.bound)
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::FibParams(a) => {
            if a.n < 3 {
                bail!("n must be at least 3");
            }
            let p: FibParams<BigInt> = fib_params(a.n);
            let value = serde_json::to_value(&p)?;
            emit(as_json, &value, || {
                format!(
                    "n={} d={} x={} y={} z={} q={} q1={} e={} z1={} delta={}\n",
                    p.n, p.d, p.x, p.y, p.z, p.q, p.q1, p.e, p.z1, p.delta
                )
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::DeltaReport(a) => {
            if a.max_k < 2 {
                bail!("--max-k must be at least 2");
            }
            let report = delta_ratio_report(a.max_k);
            emit(as_json, &serde_json::to_value(&report)?, || {
                let mut s = String::new();
                for prog in &report {
                    s += &format!("n = {}k + {} (limit {:.6})\n", prog.step, prog.offset, prog.limit);
                    for row in &prog.rows {
                        let ratio = row.ratio.map(|r| format!("{r:.6}")).unwrap_or_else(|| "-".into());
                        s += &format!("  k={:<3} n={:<4} ratio={ratio}\n", row.k, row.n);
                    }
                }
                s
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Kernel(a) => kernel(&a.input, a.u_basis, as_json),
        Command::Primitives(a) => primitives(&a.input, a.u_basis, a.bound, a.limit, as_json),
        Command::RandomCycle(a) => {
            let sols = random_cycle_search(a.n, a.seed, a.prime_bound, a.budget)?;
            let value = json!(sols
                .iter()
                .map(|s| json!({ "prime": s.prime, "g": s.system, "labels": s.labels }))
                .collect::<Vec<_>>());
            emit(as_json, &value, || {
                sols.iter()
                    .map(|s| format!("Z_{}: [{}]\n", s.prime, s.labelling().render()))
                    .collect()
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Product(a) => {
            if a.graphs.len() != a.labels.len() {
                bail!("give one --labels per --graph");
            }
            let factors = a
                .graphs
                .iter()
                .zip(&a.labels)
                .map(|(g, l)| Ok((family(g)?, input::labels(&sumgraph::MagmaSpec::IntAdd, l, false)?)))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<(&Graph, &Labelling)> = factors.iter().map(|(g, l)| (g, l)).collect();
            let p = product_labelling_many(&refs)?;
            let ok = verify(&p.labelling, &p.graph)?.ok && is_strong(&p.labelling);
            let value = json!({
                "graph6": g6(&p.graph),
                "base": p.base,
                "tuples": p.tuples,
                "labelling": labelling_to_json(&p.labelling, None),
                "verified": ok,
            });
            emit(as_json, &value, || {
                format!(
                    "product on {} vertices, base {}: [{}]\nverifies and is strong: {ok}\n",
                    p.graph.order(),
                    p.base,
                    p.labelling.render()
                )
            });
            Ok(status(ok))
        }
        Command::Claims(ClaimsCommand::List) => {
            let claims = list_claims();
            emit(as_json, &serde_json::to_value(&claims)?, || {
                claims
                    .iter()
                    .map(|c| {
                        let ext = if c.extended { " (extended)" } else { "" };
                        format!("{:<34} {:<7} {}{ext}\n", c.id, c.expected.to_string(), c.command)
                    })
                    .collect()
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Claims(ClaimsCommand::Run { pattern, extended }) => {
            let records = run_claims(pattern.as_deref(), extended)?;
            claims_report(&records, as_json)
        }
        Command::Convert(a) => convert(&a.input, a.to),
    }
}

fn verify_cmd(a: crate::VerifyArgs, as_json: bool) -> Result<ExitCode> {
    if a.list_fixtures {
        let list: Vec<Value> = fixtures()
            .iter()
            .map(|f| json!({ "id": f.id, "caption": f.caption, "magma": f.spec().to_string(), "labels": f.labelling.render() }))
            .collect();
        emit(as_json, &json!(list), || {
            fixtures().iter().map(|f| format!("{:<22} {}\n", f.id, f.caption)).collect()
        });
        return Ok(ExitCode::SUCCESS);
    }
    let (lab, target) = if let Some(id) = &a.fixture {
        let f = input::fixture(id)?;
        (f.labelling, Some(f.graph))
    } else if let Some(path) = &a.file {
        let (lab, g) = input::labelling_file(path)?;
        (lab, a.target.resolve()?.or(g))
    } else {
        let text = a.labels.as_deref().context("give --labels, --file or --fixture")?;
        let spec = input::magma(&a.magma)?;
        (input::labels(&spec, text, a.relaxed)?, a.target.resolve()?)
    };
    let Some(target) = target else {
        let g = induced_graph(&lab);
        let value = json!({ "labelling": labelling_to_json(&lab, Some(&g)), "graph6": g6(&g), "strong": is_strong(&lab) });
        emit(as_json, &value, || {
            let edges: Vec<String> = g.edges().map(|(u, w)| format!("{u}-{w}")).collect();
            format!("induced graph {}: {}\n", g6(&g), edges.join(" "))
        });
        return Ok(ExitCode::SUCCESS);
    };
    let ok = report_verdict(&lab, &target, as_json)?;
    Ok(status(ok))
}

/// Prints the verdict of `lab` against `target`; returns whether it verified.
fn report_verdict(lab: &Labelling, target: &Graph, as_json: bool) -> Result<bool> {
    let v = verify(lab, target)?;
    let strong = is_strong(lab);
    let value = json!({
        "ok": v.ok,
        "strong": strong,
        "graph6": g6(target),
        "labelling": labelling_to_json(lab, None),
        "missing_edges": v.missing_edges,
        "spurious_edges": v.spurious_edges.iter().map(|e| json!({
            "u": e.u, "w": e.w, "via": e.witness_vertex, "sum": e.witness_label,
        })).collect::<Vec<_>>(),
    });
    emit(as_json, &value, || {
        let spec = lab.spec();
        let l = lab.labels();
        let mut s = format!("labels [{}] over {spec}\n", lab.render());
        for &(u, w) in &v.missing_edges {
            s += &format!("missing edge {{{u},{w}}}: no label equals {} (+) {}\n", spec.render(&l[u]), spec.render(&l[w]));
        }
        for e in &v.spurious_edges {
            s += &format!(
                "spurious edge {{{},{}}}: {} (+) {} = {} at vertex {}\n",
                e.u,
                e.w,
                spec.render(&l[e.u]),
                spec.render(&l[e.w]),
                e.witness_label,
                e.witness_vertex
            );
        }
        let strong = if strong { ", strong" } else { "" };
        if v.ok {
            s += &format!("OK: induces exactly the target graph{strong}\n");
        } else {
            s += "FAIL\n";
        }
        s
    });
    Ok(v.ok)
}

fn bounded<T: Copy + Into<Value> + std::fmt::Display>(as_json: bool, g: &Graph, b: &Bounded<T>, cap: u64, what: &str) {
    let value = json!({
        "graph6": g6(g),
        "value": b.value().map(Into::into),
        "above_cap": b.value().is_none(),
        "cap": cap,
        "labelling": b.witness().map(|l| labelling_to_json(l, None)),
    });
    emit(as_json, &value, || match b {
        Bounded::Value(v, l) => format!("{what} {v}: [{}]\n", l.render()),
        Bounded::AboveCap => format!("{what} above the cap {cap}\n"),
    });
}

fn construct(c: Construct, as_json: bool) -> Result<ExitCode> {
    let (lab, target) = match c {
        Construct::HararyPath { n } => (cons::harary_path(n)?, format!("P{n}")),
        Construct::MatchingHarary { m } => (cons::matching_harary_style(m)?, format!("M{m}")),
        Construct::MatchingLi { m } => (cons::matching_li(m)?, format!("M{m}")),
        Construct::Kbar { n } => (cons::empty_graph(n)?, format!("E{n}")),
        Construct::KbarAlt { n } => (cons::empty_graph_even_alt(n)?, format!("E{n}")),
        Construct::C4Abelian { magma, a } => {
            let spec = input::magma(&magma)?;
            let a = input::element(&spec, &a)?;
            (cons::c4_over_abelian(&spec, &a)?, "C4".into())
        }
        Construct::Fibonacci { magma, a0, a1, n } => {
            let spec = input::magma(&magma)?;
            let fc = cons::fibonacci_cycle(&spec, &input::element(&spec, &a0)?, &input::element(&spec, &a1)?, n)?;
            let labels: Vec<String> = fc.labels.iter().map(|l| spec.render(l)).collect();
            let conditions = json!({
                "d": fc.params.d.to_string(),
                "z": fc.params.z.to_string(),
                "delta": fc.params.delta.to_string(),
                "order_divides_delta": fc.order_divides_delta,
                "d_a1_equals_z_a0": fc.d_a1_equals_z_a0,
            });
            let lab = match fc.labelling() {
                Ok(l) => l,
                Err(e) => {
                    let value = json!({ "labels": labels, "conditions": conditions, "ok": false, "error": e.to_string() });
                    emit(as_json, &value, || format!("labels [{}]: {e}\n", labels.join(",")));
                    return Ok(ExitCode::FAILURE);
                }
            };
            if !as_json {
                out(&format!(
                    "d={} z={} delta={}; order of a_0 divides delta: {}; d*a_1 = z*a_0: {}\n",
                    fc.params.d, fc.params.z, fc.params.delta, fc.order_divides_delta, fc.d_a1_equals_z_a0
                ));
            }
            (lab, format!("C{n}"))
        }
        Construct::C4l { l } => (cons::c4l_theorem_labelling(l)?, format!("C{}", 4 * l)),
        Construct::UnionCycle { k } => (cons::union_cycle(k)?, format!("C{}", 2 * k)),
        Construct::UnionClique { n, universe } => (cons::union_clique(n, universe)?, format!("K{n}")),
        Construct::BooleanClique { m } => (cons::boolean_clique(m)?, format!("K{m}")),
        Construct::RelaxedClique { n } => (cons::relaxed_clique(n), format!("K{n}")),
    };
    if !as_json {
        out(&format!("target {target}\n"));
    }
    let ok = report_verdict(&lab, &family(&target)?, as_json)?;
    Ok(status(ok))
}

fn labelled_input(a: &LabelledGraphArgs) -> Result<(Graph, Labelling)> {
    if let Some(id) = &a.fixture {
        let f = input::fixture(id)?;
        return Ok((f.graph, f.labelling));
    }
    let g = a.graph.require()?;
    let text = a.labels.as_deref().context("give --labels or --fixture")?;
    Ok((g, input::labels(&sumgraph::MagmaSpec::IntAdd, text, false)?))
}

fn u_basis() -> Vec<Vec<BigInt>> {
    Q4_U_BASIS.iter().map(|u| u.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

fn kernel(a: &LabelledGraphArgs, in_u_basis: bool, as_json: bool) -> Result<ExitCode> {
    let (g, lab) = labelled_input(a)?;
    let k = labelling_kernel(&g, &lab)?;
    let labels: Vec<BigInt> = search::int_labels(&lab).context("integral labels")?;
    let in_u = if in_u_basis {
        if g.order() != 16 {
            bail!("the printed basis has 16 coordinates; the graph has {} vertices", g.order());
        }
        Some(span_coordinates(&u_basis(), &labels))
    } else {
        None
    };
    fn ratio_strings<T: ToString>(c: &[T]) -> Vec<String> {
        c.iter().map(T::to_string).collect()
    }
    let value = json!({
        "rows": k.system.rows,
        "dimension": k.basis.len(),
        "basis": k.basis.iter().map(|b| strings(b)).collect::<Vec<_>>(),
        "coordinates": ratio_strings(&k.coordinates),
        "u_coordinates": in_u.as_ref().map(|p| p.as_ref().map(|c| ratio_strings(c))),
    });
    emit(as_json, &value, || {
        let mut s = format!("{} equations; kernel dimension {}\n", k.system.rows.len(), k.basis.len());
        for (i, b) in k.basis.iter().enumerate() {
            s += &format!("b{} = ({})\n", i + 1, strings(b).join(","));
        }
        s += &format!("labels = ({}) in this basis\n", ratio_strings(&k.coordinates).join(", "));
        match &in_u {
            Some(Some(c)) => s += &format!("labels = ({}) in u1, u2, u3\n", ratio_strings(c).join(", ")),
            Some(None) => s += "labels are not in the span of u1, u2, u3\n",
            None => {}
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn primitives(a: &LabelledGraphArgs, use_u_basis: bool, bound: i64, limit: usize, as_json: bool) -> Result<ExitCode> {
    let (g, basis) = if use_u_basis && a.fixture.is_none() && a.labels.is_none() {
        (a.graph.resolve()?.unwrap_or(family("Q4")?), u_basis())
    } else {
        let (g, lab) = labelled_input(a)?;
        let basis = if use_u_basis { u_basis() } else { labelling_kernel(&g, &lab)?.basis };
        (g, basis)
    };
    let prims = enumerate_primitive_labellings(&g, &basis, bound)?;
    let all_verify = prims.iter().all(|p| verify(&p.labelling(), &g).is_ok_and(|v| v.ok));
    let shown: Vec<Value> = prims
        .iter()
        .take(limit)
        .map(|p| json!({ "coefficients": p.coefficients, "labels": p.labels }))
        .collect();
    let value = json!({ "count": prims.len(), "box": bound, "all_verify": all_verify, "first": shown });
    emit(as_json, &value, || {
        let mut s = format!("{} primitive labellings with coefficients in [-{bound}, {bound}]\n", prims.len());
        for p in prims.iter().take(limit) {
            s += &format!("{:?} -> {:?}\n", p.coefficients, p.labels);
        }
        s
    });
    Ok(status(all_verify))
}

fn claims_report(records: &[ClaimRecord], as_json: bool) -> Result<ExitCode> {
    let bad_witness: Vec<&str> = records
        .iter()
        .filter(|r| r.witness.as_ref().is_some_and(|w| !w.recheck()))
        .map(|r| r.id.as_str())
        .collect();
    let ok = all_gating_passed(records) && bad_witness.is_empty();
    let value = json!({
        "ok": ok,
        "witnesses_recheck": bad_witness.is_empty(),
        "claims": records.iter().map(ClaimRecord::to_json).collect::<Vec<_>>(),
    });
    emit(as_json, &value, || {
        let mut s = format!("{:<34} {:<8} {:<12} {:>8}  detail\n", "id", "expected", "actual", "seconds");
        for r in records {
            s += &format!(
                "{:<34} {:<8} {:<12} {:>8.2}  {}\n",
                r.id,
                r.expected.to_string(),
                r.actual.to_string(),
                r.seconds,
                r.detail
            );
        }
        let failed = records.iter().filter(|r| r.is_gating_failure()).count();
        s += &format!("{} claims, {failed} gating failures", records.len());
        if !bad_witness.is_empty() {
            s += &format!(", witnesses failing re-check: {}", bad_witness.join(" "));
        }
        s += "\n";
        s
    });
    Ok(status(ok))
}

fn convert(path: &Path, to: GraphFormat) -> Result<ExitCode> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    if text.trim_start().starts_with('{') {
        let value: Value = serde_json::from_str(&text).context("parsing JSON")?;
        let (lab, g) = input::labelling_value(&value)?;
        let g = g.unwrap_or_else(|| induced_graph(&lab));
        if lab.len() != g.order() {
            bail!("{} labels for a graph with {} vertices", lab.len(), g.order());
        }
        out(&render_graph(&g, Some(&lab), to));
    } else {
        let graphs = parse_graph6_lines(&text).map_err(|(line, e)| anyhow::anyhow!("line {line}: {e}"))?;
        for g in &graphs {
            out(&render_graph(g, None, to));
        }
    }
    Ok(ExitCode::SUCCESS)
}
