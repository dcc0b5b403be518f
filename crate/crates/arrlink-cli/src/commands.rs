//! The subcommands. Each one builds a JSON value and a text rendering from
//! the same numbers, so the two output formats cannot disagree.

use std::fmt::Write as _;

use arrlink::arrangement::Arrangement;
use arrlink::freeness::decide_freeness;
use arrlink::invariants::{self, check_ci, residual_degree, tjurina_bounds};
use arrlink::oracle::{default_upto, predict, Oracle};
use arrlink::poly::directional_derivative;
use arrlink::residual::{auxiliary_ideal, choose_general_form, general_residual};
use arrlink::resolution::{jacobian_and_milnor_from_sat, milnor_duality_check, render_module, FreeResolution};
use arrlink::Error;
use serde_json::{json, Value};

pub struct Context {
    /// File path or canonical family spec, echoed in every report.
    pub source: String,
    pub a: Arrangement,
    pub seed: u64,
    pub max_degree: Option<usize>,
    pub oracle: Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    ChecksFailed,
    Refused,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::ChecksFailed => "failed",
            Status::Refused => "hypothesis not met",
        }
    }
}

pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub status: Status,
}

impl Outcome {
    fn new(command: &str, ctx: &Context, status: Status, mut body: Value, text: String) -> Outcome {
        if let Value::Object(map) = &mut body {
            map.insert("command".into(), json!(command));
            map.insert("source".into(), json!(ctx.source));
            map.insert("status".into(), json!(status.label()));
        }
        Outcome {
            json: body,
            text,
            status,
        }
    }
}

/// Turns a library error raised by a command into a structured refusal, or
/// passes it on when it is not about the input's hypotheses.
pub fn refusal(command: &str, source: &str, e: Error) -> Result<Outcome, String> {
    let kind = match &e {
        Error::OracleCap(_) => "oracle cap exceeded",
        Error::Certification(_) | Error::Dimension(_) | Error::InvalidResolution(_) => {
            return Err(format!("{command}: {e}"))
        }
        _ => "hypothesis not met",
    };
    let reason = e.to_string();
    Ok(Outcome {
        json: json!({
            "command": command,
            "source": source,
            "status": "hypothesis not met",
            "kind": kind,
            "reason": reason,
        }),
        text: format!("{command} on {source}: {kind}\n  {reason}\n"),
        status: Status::Refused,
    })
}

fn header(ctx: &Context) -> String {
    format!("arrangement {} (n = {}, d = {})\n", ctx.source, ctx.a.n(), ctx.a.d())
}

fn render(res: &FreeResolution) -> String {
    res.modules()
        .iter()
        .map(|m| render_module(m))
        .collect::<Vec<_>>()
        .join(" <- ")
}

fn table_line(out: &mut String, label: &str, res: &FreeResolution) {
    let _ = writeln!(out, "{label:<9} {}   [{}]", render(res), res.meta().rule);
}

pub fn analyze(ctx: &Context) -> Result<Outcome, Error> {
    let a = &ctx.a;
    let lattice = a.lattice();
    let d = a.d();
    let class = lattice.classify();
    let pairs = lattice.weighted_pair_count();
    let tau = invariants::tjurina(lattice);
    let bounds = tjurina_bounds(lattice).ok();
    let deg_r = residual_degree(lattice);
    let concurrent = check_ci(lattice);

    let mut text = header(ctx);
    let _ = writeln!(text, "class = {class}");
    let _ = writeln!(text, "flats = {}", lattice.flats().len());
    for m in lattice.flats() {
        let _ = writeln!(text, "  multiplicity {}: hyperplanes {:?}", m.len(), m);
    }
    let _ = writeln!(
        text,
        "lattice identity: sum t(t-1) = {pairs}, d(d-1) = {}, holds = {}",
        d * (d - 1),
        pairs == d * (d - 1)
    );
    let _ = writeln!(text, "concurrent = {concurrent}");
    let _ = writeln!(text, "tau = {tau}");
    let _ = writeln!(text, "residual degree = {deg_r}");
    if let Some(b) = &bounds {
        let _ = writeln!(text, "lower = {}, lower_eq = {}", b.lower, b.lower_eq);
        if let Some(u) = b.upper_b {
            let _ = writeln!(text, "upper_b = {u}, b_eq = {}", b.b_eq);
        }
        if let Some(u) = b.upper_c {
            let _ = writeln!(text, "upper_c = {u}, c_eq = {}", b.c_eq);
        }
    }

    let flats: Vec<Value> = lattice
        .flats()
        .iter()
        .map(|m| json!({"members": m, "multiplicity": m.len()}))
        .collect();
    let body = json!({
        "n": a.n(),
        "d": d,
        "forms": a.forms().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "class": class,
        "class_tag": class.tag(),
        "flats": flats,
        "lattice_identity": {"weighted_pair_count": pairs, "expected": d * (d - 1), "holds": pairs == d * (d - 1)},
        "concurrent": concurrent,
        "tau": tau,
        "residual_degree": deg_r,
        "bounds": bounds,
    });
    Ok(Outcome::new("analyze", ctx, Status::Ok, body, text))
}

pub fn tjurina(ctx: &Context) -> Result<Outcome, Error> {
    let r = tjurina_bounds(ctx.a.lattice())?;
    let mut text = header(ctx);
    let _ = writeln!(text, "tau = {}", r.tau);
    let _ = writeln!(text, "lower = {}", r.lower);
    let _ = writeln!(text, "lower_eq = {}", r.lower_eq);
    match r.upper_b {
        Some(u) => {
            let _ = writeln!(text, "upper_b = {u}\nb_eq = {}", r.b_eq);
        }
        None => text.push_str("upper_b does not apply (all hyperplanes share a flat)\n"),
    }
    match r.upper_c {
        Some(u) => {
            let _ = writeln!(text, "upper_c = {u}\nc_eq = {}", r.c_eq);
        }
        None => text.push_str("upper_c does not apply (d - 1 hyperplanes share a flat)\n"),
    }
    if let Some(c) = r.c_characterized {
        let _ = writeln!(text, "c_characterized = {c}");
    }
    for w in &r.witnesses {
        let _ = writeln!(text, "witness: {w}");
    }
    let body = serde_json::to_value(&r).unwrap_or(Value::Null);
    Ok(Outcome::new("tjurina", ctx, Status::Ok, body, text))
}

pub fn residual(ctx: &Context) -> Result<Outcome, Error> {
    let a = &ctx.a;
    let l = choose_general_form(a, ctx.seed);
    let components = general_residual(a, &l);
    let degree: usize = components.iter().map(|c| c.degree()).sum();
    let expected = residual_degree(a.lattice());
    let fl = directional_derivative(&a.defining_polynomial(), l.form());
    let aux = auxiliary_ideal(a, &l);

    let mut text = header(ctx);
    let _ = writeln!(text, "general form l = {}", l.form());
    let certificate: Vec<String> = l.certificate().iter().map(ToString::to_string).collect();
    let _ = writeln!(text, "  certified: {}", certificate.join("; "));
    let _ = writeln!(text, "components = {}", components.len());
    for c in &components {
        let _ = writeln!(
            text,
            "  {c}   flat {:?}, degree {}",
            c.flat.members(),
            c.degree()
        );
    }
    let _ = writeln!(text, "degree = {degree} (lattice value {expected})");
    let _ = writeln!(text, "minimal generator of degree {}: df/dl = {fl}", a.d() - 1);
    let _ = writeln!(
        text,
        "auxiliary ideal: degree {}, regularity {}, Hilbert function shifts by one from degree {}",
        aux.degree, aux.regularity, aux.shift_from
    );

    let status = if degree == expected { Status::Ok } else { Status::ChecksFailed };
    let body = json!({
        "n": a.n(),
        "d": a.d(),
        "general_form": l,
        "components": components,
        "degree": degree,
        "lattice_degree": expected,
        "derivative": fl.to_string(),
        "auxiliary": {"degree": aux.degree, "regularity": aux.regularity, "shift_from": aux.shift_from},
    });
    Ok(Outcome::new("residual", ctx, status, body, text))
}

pub fn betti(ctx: &Context) -> Result<Outcome, Error> {
    let a = &ctx.a;
    let d = a.d();
    let lines = a.n() == 2;
    let in_cap = d <= ctx.oracle.cap();
    let oracle = (lines && in_cap).then_some(&ctx.oracle);
    let mut prediction = predict(a, oracle, ctx.seed)?;
    let class = a.classify();

    let mut text = header(ctx);
    let _ = writeln!(text, "class = {class}");
    let _ = writeln!(text, "rule = {}", prediction.rule);
    let mut status = Status::Ok;
    let mut notes: Vec<String> = Vec::new();

    // Without a rule, lines within the cap get their tables from the oracle.
    if prediction.residual.is_none() {
        if lines && in_cap {
            let l = choose_general_form(a, ctx.seed);
            let upto = ctx.max_degree.unwrap_or(default_upto(d));
            let r = ctx.oracle.residual_ideal(a, &l)?;
            let top = ctx.oracle.top_part(a)?;
            let r_table = ctx.oracle.betti_cm_codim2(&r, upto)?;
            let top_table = ctx.oracle.betti_cm_codim2(&top, upto.max(2 * d))?;
            prediction.residual = Some(r_table);
            prediction.top = Some(top_table);
            notes.push("tables computed by the oracle".into());
        } else if lines {
            status = Status::Refused;
            notes.push(format!(
                "oracle cap exceeded: d = {d} > {}, Betti numbers left undecided",
                ctx.oracle.cap()
            ));
        } else {
            notes.push("Betti numbers need a rule or the oracle, which handles lines only".into());
        }
    }

    if let Some(r) = &prediction.residual {
        table_line(&mut text, "residual", r);
    }
    if let Some(t) = &prediction.top {
        table_line(&mut text, "top", t);
    }
    let mut jacobian = Value::Null;
    let mut milnor = Value::Null;
    let mut free = Value::Null;
    let mut self_dual = Value::Null;
    if let (true, Some(top)) = (lines, &prediction.top) {
        let tables = jacobian_and_milnor_from_sat(top, d)?;
        table_line(&mut text, "jacobian", &tables.jacobian);
        let _ = writeln!(text, "free = {}", tables.free);
        match &tables.milnor {
            Some(m) => {
                let dual = milnor_duality_check(m, d);
                let _ = writeln!(text, "milnor    {m}   [{}]", tables.jacobian.meta().rule);
                let _ = writeln!(text, "milnor self-dual = {dual}");
                if !dual {
                    status = Status::ChecksFailed;
                }
                self_dual = json!(dual);
                milnor = serde_json::to_value(m).unwrap_or(Value::Null);
            }
            None => text.push_str("milnor    0 (free arrangement)\n"),
        }
        free = json!(tables.free);
        jacobian = serde_json::to_value(&tables.jacobian).unwrap_or(Value::Null);
    }
    if let Some(h) = &prediction.residual_hilbert {
        let shown: Vec<String> = h.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "residual hilbert function = {}", shown.join(" "));
    }
    if let Some(order) = &prediction.order {
        let _ = writeln!(text, "build order = {order:?}");
    }
    for n in &notes {
        let _ = writeln!(text, "note: {n}");
    }

    let body = json!({
        "n": a.n(),
        "d": d,
        "class": class,
        "rule": prediction.rule,
        "residual": prediction.residual,
        "top": prediction.top,
        "jacobian": jacobian,
        "milnor": milnor,
        "milnor_self_dual": self_dual,
        "free": free,
        "hilbert_only": prediction.hilbert_only,
        "residual_hilbert": prediction.residual_hilbert,
        "order": prediction.order,
        "notes": notes,
    });
    Ok(Outcome::new("betti", ctx, status, body, text))
}

pub fn freeness(ctx: &Context) -> Result<Outcome, Error> {
    let report = decide_freeness(&ctx.a, ctx.seed, &ctx.oracle)?;
    let mut text = header(ctx);
    let _ = writeln!(text, "free = {}", report.free);
    if let Some((e1, e2)) = report.exponents {
        let _ = writeln!(text, "exponents = ({e1}, {e2})");
    }
    for v in &report.routes {
        let _ = writeln!(text, "  {}: free = {} ({})", v.route, v.free, v.detail);
    }
    let _ = writeln!(text, "routes agree = {}", report.agree);
    let flag = |x: Option<bool>| x.map_or("n/a".to_string(), |b| b.to_string());
    let _ = writeln!(text, "tjurina consistent = {}", flag(report.tjurina_consistent));
    let _ = writeln!(text, "degree consistent = {}", flag(report.degree_consistent));
    let _ = writeln!(text, "stable under a second general form = {}", flag(report.seed_stable));
    let status = if report.consistent() { Status::Ok } else { Status::ChecksFailed };
    let body = serde_json::to_value(&report).unwrap_or(Value::Null);
    Ok(Outcome::new("freeness", ctx, status, body, text))
}

pub fn verify(ctx: &Context) -> Result<Outcome, Error> {
    let a = &ctx.a;
    let l = choose_general_form(a, ctx.seed);
    let upto = ctx.max_degree.unwrap_or(default_upto(a.d()));
    let report = ctx.oracle.verify_all(a, &l, upto)?;
    let mut text = header(ctx);
    text.push_str(&report.to_text());
    let failed = report.failures().len();
    let _ = writeln!(
        text,
        "{} checks, {failed} failed",
        report.checks.len()
    );
    let status = if report.all_passed() { Status::Ok } else { Status::ChecksFailed };
    let body = serde_json::to_value(&report).unwrap_or(Value::Null);
    Ok(Outcome::new("verify", ctx, status, body, text))
}

/// The arrangement itself, in the text or JSON file format.
pub fn gen(ctx: &Context) -> Result<Outcome, Error> {
    let json: Value = serde_json::from_str(&ctx.a.to_json()).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(Outcome {
        json,
        text: ctx.a.to_text(),
        status: Status::Ok,
    })
}
