use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};
use weyl_core::characters::{frobenius_char, schur_expand, schur_to_json};
use weyl_core::coinvariants::{
    candidate_trace_poly3, CoinvariantConfig, DiagonalCoinvariants, GradedReport,
};
use weyl_core::exactnum::{ExactInt, ExactRat};
use weyl_core::formulas::AlgebraPresentation;
use weyl_core::methods::{MethodRegistry, ModuleQuery};
use weyl_core::parking::{enumerate_pf, for_each_pf, Family};
use weyl_core::partitions::{Partition, WeightTable};
use weyl_core::polyfit::{self, FitModel, Verdict};
use weyl_core::verify::{Verifier, VerifyOptions};
use weyl_core::{Error, Result};

use crate::render::{tuple, Block, Doc, Table};
use crate::{CharArgs, ModuleArgs, OracleArgs, ParkingArgs, PolyfitArgs, VerifyArgs};

pub struct Outcome {
    pub doc: Doc,
    pub exit: u8,
}

impl Outcome {
    fn ok(doc: Doc) -> Self {
        Outcome { doc, exit: 0 }
    }
}

fn family(l: Option<u32>) -> Result<Family> {
    l.map_or(Ok(Family::All), Family::truncated)
}

fn family_name(f: Family) -> String {
    match f {
        Family::All => "all".into(),
        Family::Truncated(l) => format!("truncated:{l}"),
    }
}

struct MethodResult {
    name: String,
    caveat: Option<&'static str>,
    dim: ExactInt,
    table: Option<WeightTable>,
}

/// `dims` and `weights`: run each selected method and compare.
pub fn module(args: &ModuleArgs, budget: u128, weights: bool) -> Result<Outcome> {
    let algebra = args.algebra.get()?;
    if args.r == 0 {
        return Err(Error::Domain("rank r must be at least 1".into()));
    }
    let mut query = ModuleQuery::new(algebra, args.r, args.shape.get());
    query.budget = budget;
    let registry = MethodRegistry::standard();

    let mut results = Vec::new();
    for name in &args.method {
        let method = registry.get(name.trim())?;
        let (dim, table) = if weights {
            let t = method.weights(&query)?;
            (t.total(), Some(t))
        } else {
            (method.dim(&query)?, None)
        };
        results.push(MethodResult {
            name: method.name().to_string(),
            caveat: method.caveat(&query),
            dim,
            table,
        });
    }

    let compared = results.len() > 1;
    let agree = results.windows(2).all(|w| {
        w[0].dim == w[1].dim && (!weights || w[0].table == w[1].table)
    });
    let verdict = compared.then_some(if agree { "match" } else { "mismatch" });
    // a caveated result checked against the coinvariant oracle
    let conjecture = match query.row_length() {
        Some(n)
            if compared
                && results.iter().any(|m| m.caveat.is_some())
                && results.iter().any(|m| m.name == "oracle") =>
        {
            let word = if agree { "confirmed" } else { "refuted" };
            Some(format!("conjecture {word} at (r={},n={n})", args.r))
        }
        _ => None,
    };

    let title = format!("W({}) for gl_{} over {algebra}", query.xi, args.r);
    let mut text = vec![Block::Line(title)];
    let mut csv;
    let mut json = json!({
        "algebra": algebra.to_string(),
        "r": args.r,
        "xi": query.xi.parts(),
    });
    let json_results: Vec<Value> = results
        .iter()
        .map(|m| {
            let mut v = json!({"method": m.name, "dim": m.dim.to_string()});
            if let Some(t) = &m.table {
                v["weights"] = t.to_json();
            }
            v["caveat"] = json!(m.caveat);
            v
        })
        .collect();
    json["results"] = json!(json_results);

    if weights {
        let mut keys: BTreeSet<&Vec<i64>> = BTreeSet::new();
        for m in &results {
            keys.extend(m.table.as_ref().expect("weights").entries().map(|(k, _)| k));
        }
        let mut header = vec!["k".to_string()];
        header.extend(results.iter().map(|m| m.name.clone()));
        let mut t = Table::new(header);
        for k in keys.into_iter().rev() {
            let mut row = vec![tuple(k)];
            row.extend(results.iter().map(|m| m.table.as_ref().expect("weights").get(k).to_string()));
            t.push(row);
        }
        let mut total = vec!["total".to_string()];
        total.extend(results.iter().map(|m| m.dim.to_string()));
        t.push(total);
        csv = t.clone();
        text.push(Block::Table(t));
    } else {
        let mut t = Table::new(["method", "dim"]);
        for m in &results {
            t.push([m.name.clone(), m.dim.to_string()]);
        }
        csv = t.clone();
        text.push(Block::Table(t));
    }
    for m in &results {
        if let Some(c) = m.caveat {
            text.push(Block::Line(format!("note: {}: {c}", m.name)));
        }
    }
    if let Some(v) = verdict {
        text.push(Block::Line(format!("verdict: {v}")));
        let mut row = vec!["verdict".to_string(), v.to_string()];
        row.resize(csv.header.len(), String::new());
        csv.push(row);
        json["verdict"] = json!(v);
    }
    if let Some(c) = &conjecture {
        text.push(Block::Line(c.clone()));
        json["conjecture"] = json!(c);
    }
    Ok(Outcome {
        doc: Doc { json, text, csv },
        exit: if compared && !agree { 1 } else { 0 },
    })
}

/// Nonzero p_λ coefficients in the same order as the Schur terms.
fn power_sum_terms(n: u32, coefficients: &BTreeMap<Partition, ExactRat>) -> Vec<(Partition, ExactRat)> {
    Partition::all_of(n)
        .into_iter()
        .filter_map(|l| coefficients.get(&l).map(|c| (l, c.clone())))
        .collect()
}

pub fn char(args: &CharArgs) -> Result<Outcome> {
    let m = args.capacity.get()?;
    let fam = family(args.l)?;
    let f = frobenius_char(&m, args.sign_twist, fam)?;
    let schur = schur_expand(&f)?;
    let p_terms = power_sum_terms(f.n, &f.coefficients);

    let mut json = json!({
        "m": m.as_slice(),
        "sign_twist": args.sign_twist,
        "family": family_name(fam),
        "power_sums": p_terms.iter()
            .map(|(l, c)| json!({"lambda": l.parts(), "coef": c.to_string()}))
            .collect::<Vec<_>>(),
    });
    json["schur"] = schur_to_json(f.n, &schur)["schur"].take();

    let twist = if args.sign_twist { " tensor sign" } else { "" };
    let mut text = vec![Block::Line(format!(
        "Frobenius characteristic of CPF(m){twist} for m = {}, family {}",
        tuple(m.as_slice()),
        family_name(fam)
    ))];
    let mut csv = Table::new(["basis", "lambda", "coefficient"]);
    let mut pt = Table::new(["p_lambda", "coefficient"]);
    for (l, c) in &p_terms {
        pt.push([l.to_string(), c.to_string()]);
        csv.push(["p".to_string(), l.to_string(), c.to_string()]);
    }
    let mut st = Table::new(["s_lambda", "multiplicity"]);
    for l in Partition::all_of(f.n) {
        match schur.get(&l) {
            Some(c) if *c != ExactInt::from(0) => {
                st.push([l.to_string(), c.to_string()]);
                csv.push(["s".to_string(), l.to_string(), c.to_string()]);
            }
            _ => {}
        }
    }
    text.push(Block::Line("power sums".into()));
    text.push(Block::Table(pt));
    text.push(Block::Line("Schur functions".into()));
    text.push(Block::Table(st));
    Ok(Outcome::ok(Doc { json, text, csv }))
}

pub fn parking(args: &ParkingArgs, budget: u128) -> Result<Outcome> {
    let m = args.capacity.get()?;
    let fam = family(args.l)?;
    let mut json = json!({"m": m.as_slice(), "family": family_name(fam)});
    if args.list {
        let mut functions: Vec<Vec<u32>> = Vec::new();
        for_each_pf(&m, fam, budget, |f| functions.push(f.to_vec()))?;
        json["count"] = json!(functions.len().to_string());
        json["functions"] = json!(functions);
        // one function per line, no header
        let mut lines = Table::new(Vec::<String>::new());
        let mut text = Vec::new();
        for f in &functions {
            let cells: Vec<String> = f.iter().map(u32::to_string).collect();
            text.push(Block::Line(cells.join(",")));
            lines.push(cells);
        }
        return Ok(Outcome::ok(Doc { json, text, csv: lines }));
    }
    let count = enumerate_pf(&m, fam, budget)?;
    json["count"] = json!(count.to_string());
    let mut t = Table::new(["m", "family", "count"]);
    t.push([tuple(m.as_slice()), family_name(fam), count.to_string()]);
    Ok(Outcome::ok(Doc {
        json,
        text: vec![Block::Table(t.clone())],
        csv: t,
    }))
}

fn degree_table(report: &GradedReport) -> Table {
    let mut t = Table::new(["degree", "dim"]);
    for (d, x) in &report.dims {
        t.push([d.to_string(), x.to_string()]);
    }
    t.push(["total".to_string(), report.total.to_string()]);
    t
}

struct OracleExtras {
    candidates: Option<Vec<(Partition, ExactInt, ExactRat)>>,
    weights: Option<WeightTable>,
}

fn oracle_doc(args: &OracleArgs, report: &GradedReport, extras: &OracleExtras, timings: bool) -> Doc {
    let mut json = report.to_json(args.multigraded, timings);
    let mut csv = Table::new(["section", "key", "value"]);
    let status = if report.converged {
        format!("converged (stall {}, cap {})", report.stall, report.cap)
    } else {
        format!("NOT converged below degree cap {} (partial result)", report.cap)
    };
    let mut text = vec![
        Block::Line(format!("DH_{}({})", report.n, report.algebra)),
        Block::Table(degree_table(report)),
        Block::Line(status),
    ];
    for (d, x) in &report.dims {
        csv.push(["degree".to_string(), d.to_string(), x.to_string()]);
    }
    csv.push(["total".to_string(), String::new(), report.total.to_string()]);
    csv.push(["converged".to_string(), String::new(), report.converged.to_string()]);

    if args.multigraded {
        let mut t = Table::new(["multidegree", "dim"]);
        for (b, x) in &report.multigraded {
            t.push([tuple(b), x.to_string()]);
            csv.push(["multidegree".to_string(), tuple(b), x.to_string()]);
        }
        text.push(Block::Line("by multidegree".into()));
        text.push(Block::Table(t));
    }
    if let Some(traces) = &report.traces {
        if args.traces {
            let label = "candidate (unverified interpretation)";
            let mut header = vec!["cycle_type", "trace"];
            if extras.candidates.is_some() {
                header.push(label);
            }
            let mut t = Table::new(header);
            let candidates: BTreeMap<&Partition, &ExactRat> = extras
                .candidates
                .iter()
                .flatten()
                .map(|(l, _, c)| (l, c))
                .collect();
            for (l, x) in traces.iter().rev() {
                let mut row = vec![l.to_string(), x.to_string()];
                csv.push(["trace".to_string(), l.to_string(), x.to_string()]);
                if let Some(c) = candidates.get(l) {
                    row.push(c.to_string());
                    csv.push(["candidate".to_string(), l.to_string(), c.to_string()]);
                }
                t.push(row);
            }
            text.push(Block::Line("traces".into()));
            text.push(Block::Table(t));
        } else {
            json.as_object_mut().expect("object").remove("traces");
        }
    }
    if let Some(c) = &extras.candidates {
        let matches = c.iter().filter(|(_, t, q)| ExactRat::from_integer(t.clone()) == *q).count();
        let summary = format!("candidate trace formula matches {matches} of {} classes", c.len());
        text.push(Block::Line(format!("{summary} (unverified interpretation, not asserted)")));
        json["candidate_traces"] = json!({
            "label": "unverified interpretation",
            "values": c.iter().rev()
                .map(|(l, t, q)| json!({
                    "cycle_type": l.parts(),
                    "candidate": q.to_string(),
                    "matches": ExactRat::from_integer(t.clone()) == *q,
                }))
                .collect::<Vec<_>>(),
        });
    }
    if let Some(w) = &extras.weights {
        let mut t = Table::new(["k", "dim"]);
        for (k, v) in w.sorted_entries() {
            t.push([tuple(k), v.to_string()]);
            csv.push(["weight".to_string(), tuple(k), v.to_string()]);
        }
        text.push(Block::Line(format!("weights for gl_{}", w.rank())));
        text.push(Block::Table(t));
        json["weights"] = w.to_json();
    }
    if timings {
        text.push(Block::Line(format!("wall time: {} ms", report.wall_time.as_millis())));
    }
    Doc { json, text, csv }
}

pub fn oracle(args: &OracleArgs, budget: u128, timings: bool) -> Result<Outcome> {
    let algebra = args.algebra.get()?;
    let mut config = CoinvariantConfig::default_for(algebra, args.n);
    config.budget = budget;
    if let Some(s) = args.stall {
        config.stall = s;
        config.cap = config.cap.max(s);
    }
    if let Some(c) = args.cap {
        config.cap = c;
    }
    let no_extras = OracleExtras {
        candidates: None,
        weights: None,
    };
    let mut dc = match DiagonalCoinvariants::compute(algebra, args.n, config) {
        Ok(dc) => dc,
        Err(Error::NonConvergence { partial, .. }) => {
            return Ok(Outcome {
                doc: oracle_doc(args, &partial, &no_extras, timings),
                exit: 3,
            })
        }
        Err(e) => return Err(e),
    };
    let want_traces = args.traces || args.r.is_some();
    if want_traces {
        dc.attach_traces()?;
    }
    let candidates = match (algebra, &dc.report().traces) {
        (AlgebraPresentation::Polynomial(3), Some(traces)) if args.traces => Some(
            traces
                .iter()
                .map(|(l, t)| (l.clone(), t.clone(), candidate_trace_poly3(l)))
                .collect(),
        ),
        _ => None,
    };
    let weights = match args.r {
        Some(0) => return Err(Error::Domain("rank r must be at least 1".into())),
        Some(r) => Some(dc.weight_table(r)?),
        None => None,
    };
    let extras = OracleExtras { candidates, weights };
    Ok(Outcome::ok(oracle_doc(args, dc.report(), &extras, timings)))
}

pub fn polyfit(args: &PolyfitArgs) -> Result<Outcome> {
    let model = match (args.model.d, args.model.l) {
        (Some(d), _) => FitModel::Weyl(d),
        (_, Some(l)) => {
            Family::truncated(l)?;
            FitModel::Truncated(l)
        }
        _ => unreachable!("clap enforces the group"),
    };
    let (lo, hi) = args.range;
    let out = polyfit::fit(model, &args.mu, lo, hi)?;
    let exit = match out.verdict {
        Verdict::Confirmed | Verdict::NoPrediction => 0,
        Verdict::DegreeMismatch | Verdict::NotPolynomial => 1,
        Verdict::GridTooSmall => 2,
    };

    let mut samples = Table::new(["lambda", "multiplicity"]);
    for (p, v) in &out.samples {
        samples.push([tuple(p), v.to_string()]);
    }
    let vars = out.variables.join(",");
    let degrees = |d: Option<&[u32]>| d.map_or("-".to_string(), tuple);
    let poly = match &out.fit {
        Ok(p) => p.to_string(),
        Err(e) => e.clone(),
    };
    let summary = vec![
        Block::Line(format!("model {model}, mu = {}", tuple(&out.mu))),
        Block::Line(format!("grid {lo}..{hi} in ({vars}), {} samples", out.samples.len())),
        Block::Line(format!("fit: {poly}")),
        Block::Line(format!("detected degrees: {}", degrees(out.detected()))),
        Block::Line(format!("expected degrees: {}", degrees(out.expected.as_deref()))),
        Block::Line(format!("verdict: {}", out.verdict)),
    ];
    let mut text = summary;
    text.push(Block::Table(samples.clone()));
    Ok(Outcome {
        doc: Doc {
            json: out.to_json(),
            text,
            csv: samples,
        },
        exit,
    })
}

pub fn verify(args: &VerifyArgs, budget: u128, timings: bool) -> Result<Outcome> {
    let verifier = Verifier::new(VerifyOptions {
        extended_d3: args.extended,
        budget,
    });
    let checks = verifier.run_suite(args.suite);
    let failed = checks.iter().filter(|c| !c.passed).count();

    let mut header = vec!["criterion", "name", "scale", "verdict", "detail"];
    if timings {
        header.push("elapsed_ms");
    }
    let mut csv = Table::new(header);
    let mut text = Vec::new();
    for c in &checks {
        let mut row = vec![
            c.criterion.map_or(String::new(), |n| n.to_string()),
            c.name.to_string(),
            c.scale.clone(),
            if c.passed { "PASS" } else { "FAIL" }.to_string(),
            c.detail.clone(),
        ];
        let mut line = c.to_string();
        if timings {
            row.push(c.elapsed.as_millis().to_string());
            line.push_str(&format!(" [{} ms]", c.elapsed.as_millis()));
        }
        csv.push(row);
        text.push(Block::Line(line));
    }
    text.push(Block::Line(format!(
        "{} of {} checks passed",
        checks.len() - failed,
        checks.len()
    )));
    let json = json!({
        "suite": format!("{:?}", args.suite).to_lowercase(),
        "passed": failed == 0,
        "checks": checks.iter().map(|c| c.to_json(timings)).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        doc: Doc { json, text, csv },
        exit: if failed == 0 { 0 } else { 1 },
    })
}
