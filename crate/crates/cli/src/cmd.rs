use std::io::Write;
use std::path::Path;

use raagkit::bb::{bb_conjugate, bb_is_fg, in_kernel, AbelianQuotientMap};
use raagkit::budget::Budget;
use raagkit::conjugacy::{ConjCertificate, Solver};
use raagkit::error::Error;
use raagkit::graph::Graph;
use raagkit::hnn::{hnn_centralizer, hnn_conjugate, HnnElement};
use raagkit::quotient::{
    cc_witness, check_intersection_preserved, check_refinement, invariant_refinement, separate_conjugacy,
    FinIndexSubgroup, FiniteHom, QuotientWitness,
};
use raagkit::special::{conj_special_intersection, dc_member, parabolic_member, Parabolic};
use raagkit::vset::VertexSet;
use raagkit::word::ReducedWord;
use serde_json::{json, Value};

use crate::hnn_input::HnnInput;
use crate::{BbKind, Cli, Command, HnnKind, MemberKind, WitnessKind};
use crate::{EXIT_DATA, EXIT_FALSE, EXIT_IO, EXIT_TRUE, EXIT_UNDECIDED, EXIT_USAGE};

pub struct Failure {
    pub code: &'static str,
    pub message: String,
    pub exit: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let exit = match e {
            Error::Budget(_) | Error::OrderCap(_) => EXIT_UNDECIDED,
            _ => EXIT_DATA,
        };
        Failure { code: e.code(), message: e.to_string(), exit }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: "usage", message: message.into(), exit: EXIT_USAGE }
}

type Outcome = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: "io",
        message: format!("cannot read {}: {e}", path.display()),
        exit: EXIT_IO,
    })
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure {
        code: "invalid_input",
        message: format!("{} is not valid JSON: {e}", path.display()),
        exit: EXIT_DATA,
    })
}

/// Prints `value` in json mode and `text` otherwise.
struct Printer<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

impl Printer<'_> {
    fn emit(&mut self, value: Value, text: impl FnOnce() -> String) {
        let _ = if self.json {
            writeln!(self.out, "{value}")
        } else {
            writeln!(self.out, "{}", text())
        };
    }
}

fn show(graph: &Graph, w: &ReducedWord) -> String {
    w.display(graph).to_string()
}

fn set_names(graph: &Graph, s: VertexSet) -> Vec<String> {
    s.iter().map(|v| graph.name(v).to_string()).collect()
}

fn parabolic_json(graph: &Graph, p: &Parabolic) -> Value {
    json!({"conjugator": show(graph, &p.conjugator), "base": set_names(graph, p.base)})
}

fn verdict(b: bool) -> i32 {
    if b {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let mut budget = Budget::from_env();
    if let Some(n) = cli.common.budget {
        budget = budget.with_steps(n);
    }
    if let Some(seed) = cli.common.seed {
        budget = budget.with_seed(seed);
    }
    let mut p = Printer { out, json: cli.common.json };
    if let Command::Hnn { base, kind } = &cli.command {
        return hnn(&mut p, base, kind, &budget);
    }
    let path = cli.common.graph.as_ref().ok_or_else(|| usage("this command needs a graph (-g FILE)"))?;
    let graph = Graph::load_graph(&read(path)?)?;
    let solver = Solver::with_budget(&graph, budget);
    let g = &graph;
    let set = |text: &str| -> Result<VertexSet, Failure> { Ok(g.parse_set(text)?) };
    let sub_or_all = |sub: &Option<String>| -> Result<VertexSet, Failure> {
        sub.as_deref().map_or(Ok(g.all()), |s| set(s))
    };
    let word = |text: &str| -> Result<ReducedWord, Failure> { Ok(g.element(text)?) };
    match &cli.command {
        Command::Reduce { word: w } => {
            let r = word(w)?;
            p.emit(json!({"reduced": show(g, &r), "length": r.len(), "support": set_names(g, r.support())}), || show(g, &r));
            Ok(EXIT_TRUE)
        }
        Command::CyclicReduce { word: w } => {
            let cf = g.cyclic_reduce(&word(w)?);
            p.emit(json!({"conjugator": show(g, &cf.conjugator), "core": show(g, &cf.core)}), || {
                format!("conjugator: {}\ncore: {}", show(g, &cf.conjugator), show(g, &cf.core))
            });
            Ok(EXIT_TRUE)
        }
        Command::Root { word: w, n } => {
            if *n == 0 {
                return Err(usage("the root degree must be positive"));
            }
            let root = g.nth_root(&word(w)?, *n);
            p.emit(json!({"root": root.as_ref().map(|r| show(g, r))}), || match &root {
                Some(r) => show(g, r),
                None => "no root".into(),
            });
            Ok(verdict(root.is_some()))
        }
        Command::Member { kind } => match kind {
            MemberKind::Special { word: w, sub } => {
                let yes = g.in_special(set(sub)?, &word(w)?);
                p.emit(json!({"member": yes}), || yes.to_string());
                Ok(verdict(yes))
            }
            MemberKind::Parabolic { word: w, sub, z } => {
                let par = Parabolic::new(word(z)?, set(sub)?);
                let yes = parabolic_member(g, &word(w)?, &par);
                p.emit(json!({"member": yes}), || yes.to_string());
                Ok(verdict(yes))
            }
            MemberKind::DoubleCoset { x, y, a, b } => {
                let found = dc_member(&solver, set(a)?, &word(x)?, set(b)?, &word(y)?)?;
                match &found {
                    Some((l, r)) => p.emit(json!({"member": true, "left": show(g, l), "right": show(g, r)}), || {
                        format!("true\nleft: {}\nright: {}", show(g, l), show(g, r))
                    }),
                    None => p.emit(json!({"member": false}), || "false".into()),
                }
                Ok(verdict(found.is_some()))
            }
        },
        Command::Intersect { a, b, x } => {
            let par = conj_special_intersection(&solver, set(a)?, &word(x)?, set(b)?)?;
            p.emit(parabolic_json(g, &par), || par.display(g).to_string());
            Ok(EXIT_TRUE)
        }
        Command::Conj { g: gw, f: fw, sub } => {
            let (x, y) = (word(gw)?, word(fw)?);
            let b = sub_or_all(sub)?;
            let cert = if b == g.all() { solver.conjugate_g(&x, &y)? } else { solver.conjugate_sub(b, &x, &y)? };
            let v = conj_json(g, &cert, &x, &y, b, None);
            p.emit(v, || conj_text(g, &cert));
            Ok(verdict(cert.is_conjugate()))
        }
        Command::Centralizer { g: gw, sub } => {
            let x = word(gw)?;
            let b = sub_or_all(sub)?;
            let c = if b == g.all() { solver.centralizer(&x)? } else { solver.centralizer_in_special(b, &x)? };
            let gens: Vec<String> = c.generators.iter().map(|w| show(g, w)).collect();
            p.emit(json!({"element": show(g, &x), "sub": set_names(g, b), "generators": gens}), || gens.join("\n"));
            Ok(EXIT_TRUE)
        }
        Command::Witness { kind } => witness(&mut p, &solver, kind),
        Command::Refine { k, retracts } => {
            let cap = solver.budget().order_cap;
            let kk = kernel_from_file(g, k, cap)?;
            let rs = retracts.iter().map(|r| set(r)).collect::<Result<Vec<_>, _>>()?;
            let m = invariant_refinement(g, &rs, &kk, cap)?;
            let ok = check_refinement(g, &rs, &kk, &m) && check_intersection_preserved(g, &rs, &m, cap)?;
            p.emit(json!({"index": m.index(), "action": m.action().to_json(g), "verified": ok}), || {
                format!("index {} (verified: {ok})\n{}", m.index(), m.action().to_json(g))
            });
            if ok {
                Ok(EXIT_TRUE)
            } else {
                Err(Error::Invalid("the refinement failed its own checks".into()).into())
            }
        }
        Command::Bb { psi, kind } => {
            let (map, psi_json) = if psi == "bb" {
                (AbelianQuotientMap::bestvina_brady(g), json!("bb"))
            } else {
                let v = read_json(Path::new(psi))?;
                (AbelianQuotientMap::from_json(g, &v)?, v)
            };
            match kind {
                BbKind::Fg => {
                    let yes = bb_is_fg(g, &map)?;
                    p.emit(json!({"finitely_generated": yes}), || yes.to_string());
                    Ok(verdict(yes))
                }
                BbKind::Member { word: w } => {
                    let yes = in_kernel(&map, &word(w)?);
                    p.emit(json!({"member": yes}), || yes.to_string());
                    Ok(verdict(yes))
                }
                BbKind::Conj { x, y } => {
                    let (x, y) = (word(x)?, word(y)?);
                    let cert = bb_conjugate(&solver, &map, &x, &y)?;
                    p.emit(conj_json(g, &cert, &x, &y, g.all(), Some(psi_json)), || conj_text(g, &cert));
                    Ok(verdict(cert.is_conjugate()))
                }
            }
        }
        Command::Verify { certificate } => {
            let v = read_json(certificate)?;
            let ok = verify(&solver, &v)?;
            p.emit(json!({"valid": ok}), || if ok { "valid".into() } else { "invalid".into() });
            Ok(verdict(ok))
        }
        Command::Hnn { .. } => unreachable!("handled before the graph is loaded"),
    }
}

fn conj_json(graph: &Graph, cert: &ConjCertificate, g: &ReducedWord, f: &ReducedWord, sub: VertexSet, psi: Option<Value>) -> Value {
    let mut v = cert.to_json(graph);
    v["g"] = json!(show(graph, g));
    v["f"] = json!(show(graph, f));
    v["sub"] = json!(set_names(graph, sub));
    if let Some(psi) = psi {
        v["psi"] = psi;
    }
    v
}

fn conj_text(graph: &Graph, cert: &ConjCertificate) -> String {
    match cert {
        ConjCertificate::Conjugator(c) => format!("conjugate by {}", show(graph, c)),
        ConjCertificate::NotConjugate(r) => format!("not conjugate ({})", r.tag()),
    }
}

fn kernel_from_file(graph: &Graph, path: &Path, cap: usize) -> Result<FinIndexSubgroup, Failure> {
    let phi = FiniteHom::from_json(graph, &read_json(path)?)?;
    if phi.domain() != graph.all() {
        return Err(Error::Invalid("the homomorphism defining K must give an image for every vertex".into()).into());
    }
    Ok(FinIndexSubgroup::kernel_of(&phi, cap)?)
}

fn witness(p: &mut Printer, solver: &Solver, kind: &WitnessKind) -> Outcome {
    let g = solver.graph();
    let cap = solver.budget().order_cap;
    let (w, sub) = match kind {
        WitnessKind::Separate { g: gw, f: fw, sub } => {
            let (x, y) = (g.element(gw)?, g.element(fw)?);
            let b = match sub {
                Some(s) => g.parse_set(s)?,
                None => g.all(),
            };
            if let ConjCertificate::Conjugator(c) = solver.conjugate_sub(b, &x, &y)? {
                p.emit(json!({"type": "conjugator", "value": show(g, &c), "g": show(g, &x), "f": show(g, &y)}), || {
                    format!("conjugate by {}; no quotient separates them", show(g, &c))
                });
                return Ok(EXIT_FALSE);
            }
            (separate_conjugacy(solver, &x, &y, b)?, b)
        }
        WitnessKind::Cc { g: gw, k, sub } => {
            let x = g.element(gw)?;
            let b = match sub {
                Some(s) => g.parse_set(s)?,
                None => g.all(),
            };
            let kk = kernel_from_file(g, k, cap)?;
            (cc_witness(solver, b, &x, &kk)?, b)
        }
    };
    let Some(w) = w else {
        p.emit(json!({"undecided": true, "sub": set_names(g, sub)}), || "undecided: search budget exhausted".into());
        return Ok(EXIT_UNDECIDED);
    };
    let verified = w.verify(g, cap)?;
    p.emit(w.to_json(g, verified), || {
        format!("witness of degree {} (verified: {verified})\n{}", w.hom.degree(), w.to_json(g, verified))
    });
    if verified {
        Ok(EXIT_TRUE)
    } else {
        Err(Error::Invalid("the witness failed re-verification".into()).into())
    }
}

fn verify(solver: &Solver, v: &Value) -> Result<bool, Failure> {
    let g = solver.graph();
    if v.get("claim").is_some() {
        let w = QuotientWitness::from_json(g, v)?;
        return Ok(w.verify(g, solver.budget().order_cap)?);
    }
    let field = |key: &str| -> Result<ReducedWord, Failure> {
        let s = v
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| Failure::from(Error::Invalid(format!("certificate needs a string {key:?}"))))?;
        Ok(g.element(s)?)
    };
    let sub = match v.get("sub").and_then(Value::as_array) {
        Some(list) => {
            let names: Vec<&str> = list.iter().filter_map(Value::as_str).collect();
            g.parse_set(&names.join(","))?
        }
        None => g.all(),
    };
    let psi = v.get("psi").map(|p| AbelianQuotientMap::from_json(g, p)).transpose()?;
    let (x, y) = (field("g")?, field("f")?);
    match v.get("type").and_then(Value::as_str) {
        Some("conjugator") => {
            let c = field("value")?;
            let in_n = psi.as_ref().map_or(true, |m| in_kernel(m, &c));
            Ok(in_n && c.support().is_subset(sub) && g.conj(&c, &x) == y)
        }
        Some("refusal") => {
            // structural refusals carry no data, so the decision is recomputed
            let cert = match &psi {
                Some(m) => bb_conjugate(solver, m, &x, &y)?,
                None => solver.conjugate_sub(sub, &x, &y)?,
            };
            let reason = v.get("reason").and_then(Value::as_str);
            Ok(matches!(&cert, ConjCertificate::NotConjugate(r) if Some(r.tag()) == reason))
        }
        _ => Err(Error::Invalid("unknown certificate type".into()).into()),
    }
}

fn hnn(p: &mut Printer, base: &Path, kind: &HnnKind, budget: &Budget) -> Outcome {
    let input = HnnInput::from_json(&read_json(base)?, budget.order_cap)?;
    let grp = &input.group;
    let fmt = |x: &HnnElement<usize>| grp.format(&grp.normal_form(x));
    match kind {
        HnnKind::Britton { element } => {
            let x = input.parse(element)?;
            p.emit(json!({"normal_form": fmt(&x), "syllables": x.len(), "signature": x.signature()}), || fmt(&x));
            Ok(EXIT_TRUE)
        }
        HnnKind::Conj { g: gw, f: fw } => {
            let (x, y) = (input.parse(gw)?, input.parse(fw)?);
            let c = hnn_conjugate(grp, &x, &y);
            p.emit(json!({"conjugate": c.is_some(), "conjugator": c.as_ref().map(fmt)}), || match &c {
                Some(c) => format!("conjugate by {}", fmt(c)),
                None => "not conjugate".into(),
            });
            Ok(verdict(c.is_some()))
        }
        HnnKind::Centralizer { element } => {
            let x = input.parse(element)?;
            let gens: Vec<String> = hnn_centralizer(grp, &x)?.generators(grp, &x).iter().map(fmt).collect();
            p.emit(json!({"generators": gens}), || gens.join("\n"));
            Ok(EXIT_TRUE)
        }
    }
}
