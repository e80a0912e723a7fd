use std::path::Path;
use std::process::ExitCode;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rlie_core::catalog::{self, CatalogObject, CatalogParams};
use rlie_core::endo;
use rlie_core::format::{emit_algebra, emit_module};
use rlie_core::u0rep::{composition_factor_dims, decompose, is_isomorphic, IsoOutcome};
use rlie_core::variety::{self, EdgePredicate, IncidenceGraph, Plane};
use rlie_core::{Element, Field, RepModule, RestrictedLieAlgebra, Subspace};
use serde_json::{json, Value};

use crate::input::{extension, load_algebra, load_module, parse_plane, parse_vector, write_text, CliError};
use crate::{AlgebraCmd, CatalogCmd, Cli, CliResult, Command, E2Args, EndoArgs, EndoOp, ModuleCmd, PredicateArg};

/// Sampled members per pencil edge when re-checking over `F_{q^2}`.
const PENCIL_SAMPLES: usize = 5;

struct Ctx {
    seed: u64,
    verify: bool,
}

pub fn run(cli: Cli) -> CliResult<ExitCode> {
    let ctx = Ctx { seed: cli.seed, verify: !cli.no_verify };
    match cli.command {
        Command::Algebra(cmd) => algebra(&ctx, cmd),
        Command::Nullcone { file, ext, points } => {
            let l = load_algebra(&file, ctx.verify)?;
            let f = extension(l.field(), ext.k)?;
            let pts = variety::nullcone_points(&l, &f)?;
            let mut out = json!({ "field_order": f.order(), "count": pts.len() });
            if points {
                out["points"] = json!(pts.iter().map(|x| variety::format_element(&f, l.names(), x)).collect::<Vec<_>>());
            }
            report(&out)
        }
        Command::E2(args) => e2(&ctx, args),
        Command::Maxp { file, ext } => {
            let l = load_algebra(&file, ctx.verify)?;
            let f = extension(l.field(), ext.k)?;
            let lf = l.extend_scalars(&f)?;
            let subalgebras: Vec<Value> = variety::maxp(&l, &f)?
                .iter()
                .map(|m| json!({ "basis": elements(&f, l.names(), &m.space.basis_vectors()), "dim": m.space.dim() }))
                .collect();
            let checks: Vec<Value> = variety::maxp_pair_checks(&lf, &f)?
                .iter()
                .map(|c| {
                    let mut v = serde_json::to_value(c).expect("serializable");
                    v["holds"] = json!(c.holds());
                    v
                })
                .collect();
            let all = checks.iter().all(|c| c["holds"] == json!(true));
            report(&json!({ "field_order": f.order(), "maxp": subalgebras, "pair_checks": checks, "all_hold": all }))
        }
        Command::Module(cmd) => module(&ctx, cmd),
        Command::Endo(args) => endo_cmd(&ctx, args),
        Command::Catalog(cmd) => catalog_cmd(&ctx, cmd),
    }
}

fn report(v: &Value) -> CliResult<ExitCode> {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn elements(f: &Field, names: &[String], xs: &[Element]) -> Vec<String> {
    xs.iter().map(|x| variety::format_element(f, names, x)).collect()
}

fn algebra(ctx: &Ctx, cmd: AlgebraCmd) -> CliResult<ExitCode> {
    match cmd {
        AlgebraCmd::Verify { file } => {
            let l = load_algebra(&file, false)?;
            let r = l.verify_axioms();
            println!("{}", serde_json::to_string_pretty(&json!({ "passed": r.passed(), "report": r })).expect("serializable"));
            if r.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
        AlgebraCmd::Info { file } => {
            let l = load_algebra(&file, ctx.verify)?;
            let f = l.field();
            let dims = |s: Vec<Subspace>| s.iter().map(Subspace::dim).collect::<Vec<_>>();
            let center = l.center();
            report(&json!({
                "p": l.p(),
                "field_order": f.order(),
                "dim": l.dim(),
                "basis": l.names(),
                "center": elements(f, l.names(), &center.basis_vectors()),
                "derived_series": dims(l.derived_series()),
                "lower_central_series": dims(l.lower_central_series()),
                "predicates": l.predicates(),
            }))
        }
    }
}

fn e2(ctx: &Ctx, args: E2Args) -> CliResult<ExitCode> {
    let l = load_algebra(&args.file, ctx.verify)?;
    let f = extension(l.field(), args.ext.k)?;
    let lf = l.extend_scalars(&f)?;
    let names = l.names();
    let mut out = json!({ "field_order": f.order() });
    let planes = match &args.through {
        Some(spec) => {
            let z0 = parse_vector(&l, &f, spec)?;
            let through = variety::e2_through(&l, &z0, &f)?;
            out["through"] = json!(variety::format_element(&f, names, &z0));
            out["z0_central"] = json!(through.z0_central);
            out["nullcone_count"] = json!(variety::nullcone_points(&l, &f)?.len());
            out["algebra_cyclic"] = json!(variety::is_cyclic(&lf, &Subspace::full(&f, lf.dim())));
            through.planes
        }
        None => variety::e2_points(&l, &f)?,
    };
    out["nodes"] = json!(planes.len());
    out["planes"] = json!(planes.iter().map(|e| e.label(names)).collect::<Vec<_>>());
    let predicate = match args.predicate {
        PredicateArg::Pencil => EdgePredicate::Pencil,
        PredicateArg::Meet => EdgePredicate::MeetInLine,
    };
    if args.graph.is_some() || args.components {
        let graph = if args.graph.is_some() {
            IncidenceGraph::build(&lf, planes, predicate)
        } else {
            IncidenceGraph::spanning_forest(&lf, planes, predicate)
        };
        if let Some(path) = &args.graph {
            write_text(Some(path), &graph.to_dot(names))?;
            out["edges"] = json!(graph.edges.len());
        }
        if args.components {
            let count = graph.component_count();
            out["predicate"] = json!(predicate.tag());
            out["components"] = json!(count);
            out["connectivity"] = json!(if count <= 1 { "connected" } else { "inconclusive" });
            if predicate == EdgePredicate::Pencil {
                out["edges_reverified"] = json!(reverify(&lf, &f, &graph, ctx.seed)?);
            }
        }
    }
    report(&out)
}

/// Re-checks every forest edge on sampled pencil members over `F_{q^2}`.
fn reverify(l: &RestrictedLieAlgebra, f: &Field, graph: &IncidenceGraph, seed: u64) -> CliResult<bool> {
    let big = Field::new(f.characteristic(), 2 * f.degree(), None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &(a, b) in &graph.edges {
        if !variety::verify_pencil_over(l, &graph.nodes[a], &graph.nodes[b], &big, PENCIL_SAMPLES, &mut rng)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn parse_sub(l: &RestrictedLieAlgebra, spec: &str) -> CliResult<Subspace> {
    let f = l.field();
    let vecs = spec.split(';').map(|s| parse_vector(l, f, s)).collect::<CliResult<Vec<_>>>()?;
    Ok(Subspace::from_vectors(f, l.dim(), &vecs))
}

fn emit(m: &RepModule, out: &crate::Output) -> CliResult<ExitCode> {
    write_text(out.path.as_ref(), &emit_module(m))?;
    Ok(ExitCode::SUCCESS)
}

fn module(ctx: &Ctx, cmd: ModuleCmd) -> CliResult<ExitCode> {
    let load = |p: &Path| load_module(p, ctx.verify);
    match cmd {
        ModuleCmd::Verify { file } => {
            let m = load_module(&file, false)?;
            let axioms = m.algebra().verify_axioms();
            let failure = m.verify_report();
            let passed = axioms.passed() && failure.is_none();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "passed": passed,
                    "algebra": axioms,
                    "module": failure.map(|e| e.to_string()),
                }))
                .expect("serializable")
            );
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        ModuleCmd::Tensor { a, b, out } => emit(&load(&a)?.tensor(&load(&b)?)?, &out),
        ModuleCmd::Dual { file, out } => emit(&load(&file)?.dual(), &out),
        ModuleCmd::Restrict { file, sub, out } => {
            let m = load(&file)?;
            let h = parse_sub(m.algebra(), &sub)?;
            emit(&m.restrict(&h)?, &out)
        }
        ModuleCmd::Induce { algebra, file, sub, out } => {
            let l = load_algebra(&algebra, ctx.verify)?;
            let h = parse_sub(&l, &sub)?;
            let n = load(&file)?;
            let sub_algebra = l.subalgebra(&h)?;
            if n.gens() != sub_algebra.dim() {
                return Err(CliError::Usage(format!(
                    "module has {} action matrices, the subalgebra has dimension {}",
                    n.gens(),
                    sub_algebra.dim()
                )));
            }
            let n = RepModule::new(&sub_algebra, n.actions().to_vec())?;
            if ctx.verify {
                n.verify().map_err(|e| CliError::Verification(format!("module over the subalgebra: {e}")))?;
            }
            emit(&RepModule::induce(&l, &h, &n)?, &out)
        }
        ModuleCmd::Radical { file, out } => emit(&load(&file)?.radical_submodule(), &out),
        ModuleCmd::Socle { file, out } => {
            let m = load(&file)?;
            emit(&m.submodule(&m.socle())?, &out)
        }
        ModuleCmd::Decompose { file } => {
            let m = load(&file)?;
            let mut dims: Vec<usize> = decompose(&m, ctx.seed)?.iter().map(RepModule::dim).collect();
            dims.sort_unstable_by(|a, b| b.cmp(a));
            let factors = composition_factor_dims(&m, ctx.seed)?;
            report(&json!({ "dim": m.dim(), "summands": dims, "composition_factor_dims": factors }))
        }
        ModuleCmd::Strip { file, report: as_report, out } => {
            let m = load(&file)?;
            let s = m.strip_projectives();
            if as_report {
                report(&json!({
                    "dim": m.dim(),
                    "core_dim": s.core.dim(),
                    "projective_summands": s.projective_summands(),
                    "projectives": s.projectives,
                }))
            } else {
                emit(&s.core, &out)
            }
        }
        ModuleCmd::Heller { file, n, out } => emit(&load(&file)?.heller(n), &out),
        ModuleCmd::Isiso { a, b } => {
            let outcome = match is_isomorphic(&load(&a)?, &load(&b)?, ctx.seed) {
                IsoOutcome::Isomorphic(_) => "isomorphic",
                IsoOutcome::NotIsomorphic => "not_isomorphic",
                IsoOutcome::Unknown => "unknown",
            };
            report(&json!({ "result": outcome }))
        }
    }
}

fn endo_cmd(ctx: &Ctx, args: EndoArgs) -> CliResult<ExitCode> {
    let m = load_module(&args.module, ctx.verify)?;
    let l = m.algebra();
    let f = extension(m.field(), args.ext.k)?;
    let plane = match &args.plane {
        Some(spec) => {
            let (u, v) = parse_plane(l, &f, spec)?;
            Some(Plane::spanned_by(&f, &u, &v)?)
        }
        None => None,
    };
    let per_plane = matches!(args.op, EndoOp::Kernel | EndoOp::Degree | EndoOp::Syzygy);
    if plane.is_some() && !per_plane {
        return Err(CliError::Usage("--plane applies to kernel, degree and syzygy only".into()));
    }
    let planes = match plane {
        Some(e) => vec![e],
        None if per_plane => variety::e2_points(l, &f)?,
        None => vec![],
    };
    let names = l.names();
    let label = |e: &Plane| e.label(names);
    let out = match args.op {
        EndoOp::Check => json!({ "endotrivial": endo::is_endotrivial(&m)? }),
        EndoOp::Rank => serde_json::to_value(endo::constant_rank(&m, &f)?).expect("serializable"),
        EndoOp::Kernel => {
            let mut rows = vec![];
            for e in &planes {
                let k = endo::generic_kernel(&m, e, &f)?;
                rows.push(json!({
                    "plane": label(e),
                    "dim": k.dim(),
                    "stable": endo::generic_kernel_stable(&m, e, &f)?,
                }));
            }
            json!({ "entries": rows })
        }
        EndoOp::Degree => {
            let mut map = serde_json::Map::new();
            for e in &planes {
                map.insert(label(e), json!(endo::degree(&m, e, &f)?));
            }
            Value::Object(map)
        }
        EndoOp::Syzygy => {
            if planes.is_empty() {
                return Err(rlie_core::Error::EmptyE2.into());
            }
            let mut map = serde_json::Map::new();
            for e in &planes {
                map.insert(label(e), json!(endo::syzygy_value(&m, e, &f)?));
            }
            Value::Object(map)
        }
        EndoOp::Syz3 => {
            let checks = endo::check_syz3(&m, &f)?;
            let all = checks.iter().all(|c| c.holds);
            json!({ "entries": checks, "all_hold": all })
        }
        EndoOp::Duality => {
            let checks = endo::check_degree_duality(&m, &f)?;
            let all = checks.iter().all(|c| c.holds);
            json!({ "entries": checks, "all_hold": all })
        }
        EndoOp::Classify => serde_json::to_value(endo::classify_endotrivial(&m, &f, args.depth, args.force)?).expect("serializable"),
    };
    report(&out)
}

fn catalog_cmd(ctx: &Ctx, cmd: CatalogCmd) -> CliResult<ExitCode> {
    match cmd {
        CatalogCmd::List => {
            for name in catalog::NAMES {
                println!("{name}");
            }
            Ok(ExitCode::SUCCESS)
        }
        CatalogCmd::Emit { name, p, k, rank, omega, chain, toral_center } => {
            let field = Field::new(p, k, None)?;
            let params = CatalogParams { rank, omega, chain, seed: ctx.seed, toral_center };
            let text = match catalog::build(&name, &field, &params)?.object {
                CatalogObject::Algebra(l) => emit_algebra(&l),
                CatalogObject::Module(m) => emit_module(&m),
            };
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}
