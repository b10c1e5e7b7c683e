//! Commands and their JSON/CSV output.

use std::cell::RefCell;
use std::time::Instant;

use serde_json::{json, Map, Value};

use rees_core::asymptotics::{Asymptotics, CheckerVerdict, Verdict, WindowOptions};
use rees_core::modops::{height, ExtendedNat};
use rees_core::{Error, Field, PrimeField, Rationals, ReesContext, Result};

use crate::instance::{Instance, InstanceDecl};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Power(usize),
    DepthSeq,
    AssSeq,
    Spread,
    Dim,
    Burch,
    Grade,
    CmEquality,
    CowsikNori,
    Report,
}

/// Rendered output plus whether any checker reported a violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub violation: bool,
}

/// Runs `command` on `decl`; `name` labels the instance in the output.
pub fn run(decl: &InstanceDecl, name: &str, command: Command, meta: bool) -> Result<Outcome> {
    match decl.ring.characteristic {
        0 => Runner::new(decl, name, meta, Rationals)?.run(command),
        p => Runner::new(decl, name, meta, PrimeField::new(p)?)?.run(command),
    }
}

/// `{"status": "UNSUPPORTED", "reason": ...}`.
pub fn unsupported(reason: impl std::fmt::Display) -> Value {
    json!({ "status": "UNSUPPORTED", "reason": reason.to_string() })
}

/// Errors that mark an analysis as unavailable rather than failing the run.
fn optional<T>(r: Result<T>) -> Result<std::result::Result<T, Value>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ (Error::Unsupported(_) | Error::Validation(_) | Error::ResourceLimit(_))) => {
            Ok(Err(unsupported(e)))
        }
        Err(e) => Err(e),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

struct Runner<'s, F: Field> {
    decl: &'s InstanceDecl,
    name: &'s str,
    meta: bool,
    instance: Instance<F>,
    ctx: ReesContext<F>,
    timings: RefCell<Map<String, Value>>,
}

impl<'s, F: Field> Runner<'s, F> {
    fn new(decl: &'s InstanceDecl, name: &'s str, meta: bool, field: F) -> Result<Self> {
        let instance = decl.build(field)?;
        let ctx = instance.context()?;
        Ok(Runner {
            decl,
            name,
            meta,
            instance,
            ctx,
            timings: RefCell::new(Map::new()),
        })
    }

    fn window(&self) -> Result<Asymptotics<'_, F>> {
        let o = &self.decl.options;
        Ok(Asymptotics::new(
            &self.ctx,
            WindowOptions {
                n_max: o.n_max,
                window: o.window,
                seed: o.seed,
            },
        )?
        .with_instance(self.name))
    }

    fn timed<T>(&self, label: &str, f: impl FnOnce(&Self) -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f(self)?;
        let ms = start.elapsed().as_millis() as u64;
        self.timings.borrow_mut().insert(label.into(), json!(ms));
        Ok(out)
    }

    fn header(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("schemaVersion".into(), json!(SCHEMA_VERSION));
        m.insert("instance".into(), json!(self.name));
        m.insert("n_max".into(), json!(self.decl.options.n_max));
        m.insert("window".into(), json!(self.decl.options.window));
        m
    }

    fn finish(&self, mut body: Map<String, Value>, violation: bool) -> Outcome {
        if self.meta {
            body.insert(
                "meta".into(),
                json!({
                    "version": env!("CARGO_PKG_VERSION"),
                    "seed": self.decl.options.seed,
                    "timings_ms": Value::Object(self.timings.borrow().clone()),
                }),
            );
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(body)).expect("json");
        text.push('\n');
        Outcome {
            body: text,
            violation,
        }
    }

    fn run(self, command: Command) -> Result<Outcome> {
        let mut body = self.header();
        let mut violation = false;
        match command {
            Command::Power(n) => {
                let csv = self.ctx.power_csv(n)?;
                return Ok(Outcome {
                    body: csv,
                    violation: false,
                });
            }
            Command::DepthSeq => {
                let (seq, powers) = self.timed("depth", |s| {
                    let w = s.window()?;
                    Ok((w.depth_sequence()?, w.depth_powers()?))
                })?;
                body.insert("depth_sequence".into(), to_json(&seq));
                body.insert("depth_powers".into(), to_json(&powers));
            }
            Command::AssSeq => {
                let ass = self.timed("ass", |s| s.ass_json())?;
                body.insert("ass_sequence".into(), ass);
            }
            Command::Spread => {
                let v = self.timed("spread", |s| s.spread_json())?;
                body.extend(v);
            }
            Command::Dim => {
                let (a, b) = self.timed("dim", |s| s.ctx.dim_rees_routes())?;
                body.insert("route_presentation".into(), json!(a));
                body.insert("route_rank".into(), json!(b));
                body.insert("d".into(), json!(self.ctx.d()));
                body.insert("rank".into(), json!(self.ctx.rank()?));
                if a != b {
                    return Err(Error::Inconsistency(format!(
                        "dim R_G(E): presentation gives {a}, d + rank E gives {b}"
                    )));
                }
                body.insert("dim_rees".into(), json!(a));
            }
            Command::Burch | Command::Grade | Command::CmEquality | Command::CowsikNori => {
                let v = self.timed("checker", |s| s.checker(command))?;
                violation = is_violation(&v);
                body.insert("checker".into(), v);
            }
            Command::Report => {
                let (record, bad) = self.report()?;
                body.extend(record);
                violation = bad;
            }
        }
        Ok(self.finish(body, violation))
    }

    fn ass_json(&self) -> Result<Value> {
        let w = self.window()?;
        Ok(match optional(w.ass_sequence())? {
            Ok(seq) => {
                let names = self.instance.ring.names();
                let tail = seq.stable_tail.as_ref().map(|t| {
                    json!({
                        "from": t.from,
                        "value": t.value.iter().map(|p| p.render(names)).collect::<Vec<_>>(),
                    })
                });
                json!({ "values": seq.render(names), "stable_tail": tail })
            }
            Err(marker) => marker,
        })
    }

    fn spread_json(&self) -> Result<Map<String, Value>> {
        let fiber = self.ctx.fiber_cone()?;
        let relations: Vec<String> = fiber
            .ideal
            .minimal_generators()?
            .iter()
            .map(|g| g.component(0).to_string())
            .collect();
        let mut m = Map::new();
        m.insert("spread".into(), json!(fiber.spread));
        m.insert("mu".into(), json!(self.ctx.mu()));
        m.insert("fiber_cone_relations".into(), json!(relations));
        Ok(m)
    }

    fn checker(&self, command: Command) -> Result<Value> {
        let w = self.window()?;
        let v: Result<CheckerVerdict> = match command {
            Command::Burch => w.burch_check(),
            Command::Grade => w.grade_and_depth_checks(),
            Command::CmEquality => w.cm_equality_check(),
            Command::CowsikNori => w.cowsik_nori_check(self.instance.primes()),
            _ => unreachable!("not a checker"),
        };
        Ok(match optional(v)? {
            Ok(v) => to_json(&v),
            Err(marker) => marker,
        })
    }

    fn report(&self) -> Result<(Map<String, Value>, bool)> {
        let mut m = Map::new();
        let ctx = &self.ctx;
        m.insert(
            "ring".into(),
            json!({
                "char": self.decl.ring.characteristic,
                "vars": self.decl.ring.vars,
                "weights": self.decl.ring.weights,
            }),
        );
        m.insert("d".into(), json!(ctx.d()));
        m.insert("e".into(), json!(ctx.e()));
        m.insert("mu".into(), json!(ctx.mu()));
        m.insert("generator_degrees".into(), json!(ctx.generator_degrees()));
        m.insert("rank".into(), json!(ctx.rank()?));

        let dim = self.timed("dim_rees", |s| s.ctx.dim_rees())?;
        m.insert("dim_rees".into(), json!(dim));
        let spread = self.timed("spread", |s| s.spread_json())?;
        m.insert("spread".into(), spread["spread"].clone());
        m.insert(
            "fiber_cone_relations".into(),
            spread["fiber_cone_relations"].clone(),
        );

        let (seq, powers) = self.timed("depth", |s| {
            let w = s.window()?;
            Ok((w.depth_sequence()?, w.depth_powers()?))
        })?;
        m.insert("depth_sequence".into(), to_json(&seq));
        m.insert("depth_powers".into(), to_json(&powers));
        let ass = self.timed("ass", |s| s.ass_json())?;
        m.insert("ass_sequence".into(), ass);

        let heights = self.timed("fitting", |s| {
            s.ctx
                .fitting_chain()?
                .iter()
                .map(height)
                .collect::<Result<Vec<ExtendedNat>>>()
        })?;
        m.insert("fitting_heights".into(), to_json(&heights));
        let fe = height(&ctx.fitting_invariant()?)?;
        m.insert("fitting_invariant_height".into(), to_json(&fe));
        m.insert("ideal_module".into(), json!(ctx.is_ideal_module()?));
        m.insert("free".into(), json!(ctx.is_free()?));

        match optional(self.timed("deviations", |s| s.ctx.deviations()))? {
            Ok(dev) => {
                m.insert("deviation".into(), json!(dev.deviation));
                m.insert("analytic_deviation".into(), json!(dev.analytic_deviation));
            }
            Err(marker) => {
                m.insert("deviation".into(), marker.clone());
                m.insert("analytic_deviation".into(), marker);
            }
        }
        let primes = self.instance.primes();
        let predicates = match optional(self.timed("predicates", |s| s.ctx.predicates(primes)))? {
            Ok(p) => json!({
                "complete_intersection": p.complete_intersection,
                "equimultiple": p.equimultiple,
                "generically_ci": match p.generically_ci {
                    Some(b) => json!(b),
                    None => unsupported("F_e(E) is not monomial and no primes were supplied"),
                },
                "local_mu": p.local_counts.iter()
                    .map(|c| (c.prime.clone(), json!(c.local_mu)))
                    .collect::<Map<_, _>>(),
            }),
            Err(marker) => marker,
        };
        m.insert("predicates".into(), predicates);

        let mut checkers = Map::new();
        for (label, cmd) in [
            ("burch", Command::Burch),
            ("grade", Command::Grade),
            ("cm_equality", Command::CmEquality),
            ("cowsik_nori", Command::CowsikNori),
        ] {
            let v = self.timed(label, |s| s.checker(cmd))?;
            checkers.insert(label.into(), v);
        }
        let superficial = self.timed("superficial", |s| s.window()?.superficial_element())?;
        let bar = match &superficial {
            Some(a) => {
                let v = self.timed("bar_reduce", |s| s.window()?.bar_reduce_check(a))?;
                to_json(&v)
            }
            None => unsupported("no superficial linear form in the window"),
        };
        m.insert(
            "superficial_element".into(),
            superficial.map_or(json!("NONE"), |a| json!(a.to_string())),
        );
        checkers.insert("bar_reduce".into(), bar);
        let violation = checkers.values().any(is_violation);
        m.insert("checkers".into(), Value::Object(checkers));
        Ok((m, violation))
    }
}

fn is_violation(v: &Value) -> bool {
    v.get("verdict") == Some(&to_json(&Verdict::Violation))
}
