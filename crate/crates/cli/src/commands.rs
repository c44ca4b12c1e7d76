use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use fullgroup::construct::{
    clopen_transport, cylinder_involution, free_pair, involution_into, localize_conjugate,
    minimality_witness, paired_transport, swap_involution, witness_search_with, SearchBounds,
    SearchOutcome,
};
use fullgroup::group::Order;
use fullgroup::invariant::{
    bowen_franks, bowen_franks_matrix, clopen_class, determinant, full_group_iso_decide,
    gamma_equivalent, Equivalence,
};
use fullgroup::{ClopenSet, EpPoint, TableMap, TransitionMatrix, Word};

use crate::report::CommandReport;
use crate::{BoundArgs, ClopenOp, Command, ConstructArgs, Lemma, SearchArgs};

/// A failed command: exit code 1 for domain failures, 2 for usage errors.
struct Failure {
    code: i32,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::from(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<Arc<TransitionMatrix>, Failure> {
    let m: TransitionMatrix = read(path)?
        .parse()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Arc::new(m))
}

fn load_clopen(m: &Arc<TransitionMatrix>, path: &Path) -> Result<ClopenSet, Failure> {
    Ok(ClopenSet::parse(m, &read(path)?).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn load_table(m: &Arc<TransitionMatrix>, path: &Path) -> Result<TableMap, Failure> {
    Ok(TableMap::parse(m, &read(path)?).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn write(r: &mut CommandReport, path: &Path, content: &str) -> Outcome {
    fs::write(path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    r.artifact(path.display());
    Ok(())
}

fn write_opt(r: &mut CommandReport, path: &Option<PathBuf>, content: &str) -> Outcome {
    match path {
        Some(p) => write(r, p, content),
        None => Ok(()),
    }
}

fn write_into(r: &mut CommandReport, dir: &Option<PathBuf>, name: &str, content: &str) -> Outcome {
    let Some(dir) = dir else { return Ok(()) };
    fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    write(r, &dir.join(name), content)
}

fn required<'a, T>(value: &'a Option<T>, flag: &str, lemma: &str) -> Result<&'a T, Failure> {
    value
        .as_ref()
        .ok_or_else(|| usage(format!("construct {lemma} needs {flag}")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "TRUE"
    } else {
        "FALSE"
    }
}

fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "none".into()
    } else {
        v.join(" ")
    }
}

fn name(command: &Command) -> &'static str {
    match command {
        Command::ValidateMatrix { .. } => "validate-matrix",
        Command::Words { .. } => "words",
        Command::Clopen { .. } => "clopen",
        Command::TableValidate { .. } => "table-validate",
        Command::Compose { .. } => "compose",
        Command::Inverse { .. } => "inverse",
        Command::Reduce { .. } => "reduce",
        Command::Order { .. } => "order",
        Command::Support { .. } => "support",
        Command::Cocycles { .. } => "cocycles",
        Command::Commutes { .. } => "commutes",
        Command::LocalMember { .. } => "local-member",
        Command::Split { .. } => "split",
        Command::Construct(_) => "construct",
        Command::WitnessSearch(_) => "witness-search",
        Command::Bf { .. } => "bf",
        Command::DecideIso { .. } => "decide-iso",
        Command::ClopenClass { .. } => "clopen-class",
        Command::GammaEquiv { .. } => "gamma-equiv",
        Command::Verify { .. } => "verify",
    }
}

pub fn run(command: Command) -> CommandReport {
    let name = name(&command);
    let mut r = CommandReport::new(name);
    match dispatch(&mut r, command) {
        Ok(()) => r,
        Err(f) => {
            let mut e = CommandReport::error(name, f.message);
            e.inputs = r.inputs;
            e.exit_code = f.code;
            e
        }
    }
}

fn dispatch(r: &mut CommandReport, command: Command) -> Outcome {
    match command {
        Command::ValidateMatrix { matrix } => {
            r.input("matrix", matrix.display());
            let m = load_matrix(&matrix)?;
            r.detail("N", m.n()).detail("VALID", "TRUE");
            Ok(())
        }
        Command::Words {
            matrix,
            k,
            connect,
            path_pair,
        } => {
            r.input("matrix", matrix.display()).input("k", k);
            let m = load_matrix(&matrix)?;
            let words = m.admissible_words(k);
            r.detail("COUNT", words.len())
                .detail("WORDS", list_lines(&words));
            let symbol = |s: u8| -> Result<u8, Failure> {
                if (1..=m.n()).contains(&(s as usize)) {
                    Ok(s)
                } else {
                    Err(format!("symbol {s} is not in 1..={}", m.n()).into())
                }
            };
            if let Some(uv) = connect {
                let (u, v) = (symbol(uv[0])?, symbol(uv[1])?);
                r.detail("CONNECT", m.connect_path(u, v));
            }
            if let Some(s) = path_pair {
                let (a, b, u) = m.distinct_path_pair(symbol(s)?)?;
                r.detail("PATH_S", a)
                    .detail("PATH_S2", b)
                    .detail("PATH_END", u);
            }
            Ok(())
        }
        Command::Clopen {
            matrix,
            op,
            x,
            y,
            output,
        } => {
            r.input("matrix", matrix.display()).input("x", x.display());
            let m = load_matrix(&matrix)?;
            let xs = load_clopen(&m, &x)?;
            let second = |r: &mut CommandReport| -> Result<ClopenSet, Failure> {
                let y = y
                    .as_ref()
                    .ok_or_else(|| usage("this operation needs a second set"))?;
                r.input("y", y.display());
                load_clopen(&m, y)
            };
            let result = match op {
                ClopenOp::Canonical => xs,
                ClopenOp::Complement => xs.complement(),
                ClopenOp::Union => xs.union(&second(r)?)?,
                ClopenOp::Intersection => xs.intersection(&second(r)?)?,
                ClopenOp::Difference => xs.difference(&second(r)?)?,
                ClopenOp::Compare => {
                    let rel = xs.compare(&second(r)?)?;
                    r.detail("RELATION", rel)
                        .verdict(rel.to_string().to_uppercase());
                    return Ok(());
                }
            };
            r.detail("RESULT", &result);
            write_opt(r, &output, &result.to_string())
        }
        Command::TableValidate { matrix, table } => {
            r.input("matrix", matrix.display())
                .input("table", table.display());
            let m = load_matrix(&matrix)?;
            let t = load_table(&m, &table)?;
            r.detail("VALID", "TRUE")
                .detail("DEPTH", t.depth())
                .detail("LEAVES", t.canonical().leaf_count())
                .detail("TABLE", &t);
            Ok(())
        }
        Command::Compose {
            matrix,
            outer,
            inner,
            output,
        } => {
            r.input("matrix", matrix.display())
                .input("outer", outer.display())
                .input("inner", inner.display());
            let m = load_matrix(&matrix)?;
            let t = TableMap::compose(&load_table(&m, &outer)?, &load_table(&m, &inner)?)?;
            table_result(r, &t, &output)
        }
        Command::Inverse {
            matrix,
            table,
            output,
        } => {
            r.input("matrix", matrix.display())
                .input("table", table.display());
            let m = load_matrix(&matrix)?;
            let t = load_table(&m, &table)?.inverse();
            table_result(r, &t, &output)
        }
        Command::Reduce {
            matrix,
            table,
            output,
        } => {
            r.input("matrix", matrix.display())
                .input("table", table.display());
            let m = load_matrix(&matrix)?;
            let t = load_table(&m, &table)?.canonical();
            table_result(r, &t, &output)
        }
        Command::Order {
            matrix,
            table,
            max_iter,
        } => {
            r.input("matrix", matrix.display())
                .input("table", table.display())
                .input("max-iter", max_iter);
            let m = load_matrix(&matrix)?;
            let t = load_table(&m, &table)?;
            match t.power_order(max_iter) {
                Order::Finite(n) => r.detail("ORDER", n),
                Order::ExceedsBound => r.detail("ORDER", format!("exceeds {max_iter}")),
            };
            Ok(())
        }
        Command::Support {
            matrix,
            table,
            output,
        } => {
            r.input("matrix", matrix.display())
                .input("table", table.display());
            let m = load_matrix(&matrix)?;
            let t = load_table(&m, &table)?;
            support_details(r, &t);
            write_opt(r, &output, &t.support().to_string())
        }
        Command::Cocycles { matrix, table } => {
            r.input("matrix", matrix.display())
                .input("table", table.display());
            let m = load_matrix(&matrix)?;
            cocycle_details(r, &load_table(&m, &table)?);
            Ok(())
        }
        Command::Commutes {
            matrix,
            first,
            second,
        } => {
            r.input("matrix", matrix.display())
                .input("first", first.display())
                .input("second", second.display());
            let m = load_matrix(&matrix)?;
            let c = load_table(&m, &first)?.commutes(&load_table(&m, &second)?)?;
            r.detail("COMMUTES", yes_no(c)).verdict(yes_no(c));
            Ok(())
        }
        Command::LocalMember { matrix, table, o } => {
            r.input("matrix", matrix.display())
                .input("table", table.display())
                .input("O", o.display());
            let m = load_matrix(&matrix)?;
            let t = load_table(&m, &table)?;
            let member = t.in_local_subgroup(&load_clopen(&m, &o)?)?;
            r.detail("MEMBER", yes_no(member)).verdict(yes_no(member));
            Ok(())
        }
        Command::Split {
            matrix,
            table,
            o,
            output_dir,
        } => {
            r.input("matrix", matrix.display())
                .input("table", table.display())
                .input("O", o.display());
            let m = load_matrix(&matrix)?;
            let t = load_table(&m, &table)?;
            split(r, &t, &load_clopen(&m, &o)?, &output_dir)
        }
        Command::Construct(args) => construct(r, args),
        Command::WitnessSearch(args) => search(r, args),
        Command::Bf { matrix } => {
            r.input("matrix", matrix.display());
            let m = load_matrix(&matrix)?;
            let (g, u) = bowen_franks(&m)?;
            r.detail("INVARIANT_FACTORS", list(&g.torsion))
                .detail("FREE_RANK", g.free_rank)
                .detail("GROUP", &g)
                .detail("U", &u)
                .detail("SMITH_DIAGONAL", list(&g.smith.diagonal))
                .detail("DET", determinant(&bowen_franks_matrix(&m))?);
            Ok(())
        }
        Command::DecideIso { a, b } => {
            r.input("a", a.display()).input("b", b.display());
            let (ma, mb) = (load_matrix(&a)?, load_matrix(&b)?);
            let rep = full_group_iso_decide(&ma, &mb)?;
            r.detail("INVARIANT_FACTORS_A", list(&rep.group_a.torsion))
                .detail("FREE_RANK_A", rep.group_a.free_rank)
                .detail("U_A", &rep.u_a)
                .detail("DET_A", rep.det_a)
                .detail("INVARIANT_FACTORS_B", list(&rep.group_b.torsion))
                .detail("FREE_RANK_B", rep.group_b.free_rank)
                .detail("U_B", &rep.u_b)
                .detail("DET_B", rep.det_b)
                .detail("VERDICT", rep.verdict)
                .detail("REASON", &rep.reason)
                .verdict(rep.verdict);
            Ok(())
        }
        Command::ClopenClass { matrix, x } => {
            r.input("matrix", matrix.display()).input("x", x.display());
            let m = load_matrix(&matrix)?;
            let (g, _) = bowen_franks(&m)?;
            let c = clopen_class(&g, &load_clopen(&m, &x)?);
            r.detail("GROUP", &g).detail("CLASS", &c);
            Ok(())
        }
        Command::GammaEquiv {
            matrix,
            u,
            v,
            bounds,
            output,
        } => {
            r.input("matrix", matrix.display())
                .input("U", u.display())
                .input("V", v.display());
            bound_inputs(r, &bounds);
            let m = load_matrix(&matrix)?;
            let (us, vs) = (load_clopen(&m, &u)?, load_clopen(&m, &v)?);
            match gamma_equivalent(&us, &vs, search_bounds(&bounds))? {
                Equivalence::Equivalent(t) => {
                    r.detail("VERDICT", "EQUIVALENT").detail("WITNESS", &t);
                    r.check("γ(U) = V", t.image_clopen(&us).is_ok_and(|i| i == vs));
                    if r.exit_code == 0 {
                        r.verdict("EQUIVALENT");
                    }
                    write_opt(r, &output, &t.to_string())?;
                }
                Equivalence::NotEquivalent(why) => {
                    r.detail("VERDICT", "NOT_EQUIVALENT")
                        .detail("REASON", why)
                        .detail(
                            "CERTIFICATE",
                            "clopen class in the Bowen-Franks group (K-theoretic invariant)",
                        )
                        .verdict("NOT_EQUIVALENT");
                }
                Equivalence::Undecided(why) => {
                    r.detail("VERDICT", "UNDECIDED")
                        .detail("REASON", why)
                        .verdict("UNDECIDED");
                }
            }
            Ok(())
        }
        Command::Verify { matrix, table } => {
            r.input("matrix", matrix.display())
                .input("table", table.display());
            let m = load_matrix(&matrix)?;
            let t = load_table(&m, &table)?;
            r.check("table is a homeomorphism of X_A", true);
            r.check(
                "γ⁻¹γ = id",
                TableMap::compose(&t.inverse(), &t).is_ok_and(|i| i.is_identity()),
            );
            let cocycles = t.cocycles();
            let holds = cocycles.entries.iter().all(|(nu, k, l)| {
                ClopenSet::cylinder(&m, nu.clone())
                    .ok()
                    .and_then(|c| c.sample_point())
                    .is_some_and(|x| t.apply(&x).shift(*k) == x.shift(*l))
            });
            r.check("cocycle equation on a sample point of each cylinder", holds);
            r.detail("DEPTH", t.depth());
            support_details(r, &t);
            cocycle_details(r, &t);
            match t.power_order(1000) {
                Order::Finite(n) => r.detail("ORDER", n),
                Order::ExceedsBound => r.detail("ORDER", "exceeds 1000"),
            };
            Ok(())
        }
    }
}

fn list_lines<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

fn table_result(r: &mut CommandReport, t: &TableMap, output: &Option<PathBuf>) -> Outcome {
    r.detail("DEPTH", t.depth()).detail("RESULT", t);
    write_opt(r, output, &t.to_string())
}

fn support_details(r: &mut CommandReport, t: &TableMap) {
    let (p, f) = t.support_and_fixed_set();
    r.detail("SUPPORT", &p)
        .detail("FIXED_CLOPEN", &f.clopen_part)
        .detail("FIXED_POINTS", list(&f.isolated_points));
}

fn cocycle_details(r: &mut CommandReport, t: &TableMap) {
    let c = t.cocycles();
    let lines: Vec<String> = c
        .entries
        .iter()
        .map(|(nu, k, l)| format!("{nu} k={k} l={l}"))
        .collect();
    r.detail("COCYCLE_DEPTH", c.depth)
        .detail("COCYCLES", lines.join("\n"));
}

fn split(r: &mut CommandReport, t: &TableMap, o: &ClopenSet, dir: &Option<PathBuf>) -> Outcome {
    let (inside, outside) = t.split_invariant(o)?;
    r.detail("GAMMA_1", &inside).detail("GAMMA_2", &outside);
    r.checks(&t.verify_split(o, &inside, &outside));
    write_into(r, dir, "gamma1.tbl", &inside.to_string())?;
    write_into(r, dir, "gamma2.tbl", &outside.to_string())
}

fn bound_inputs(r: &mut CommandReport, b: &BoundArgs) {
    r.input("depth", b.depth)
        .input("image-len", b.image_len)
        .input("max-nodes", b.max_nodes);
}

fn search_bounds(b: &BoundArgs) -> SearchBounds {
    SearchBounds {
        depth: b.depth,
        image_len: b.image_len,
        max_nodes: Some(b.max_nodes),
    }
}

fn search(r: &mut CommandReport, args: SearchArgs) -> Outcome {
    r.input("matrix", args.matrix.display());
    bound_inputs(r, &args.bounds);
    let m = load_matrix(&args.matrix)?;
    let maps = match &args.maps {
        Some(p) => {
            r.input("maps", format!("{} {}", p[0].display(), p[1].display()));
            Some((load_clopen(&m, &p[0])?, load_clopen(&m, &p[1])?))
        }
        None => None,
    };
    let support_in = match &args.support_in {
        Some(p) => {
            r.input("support-in", p.display());
            Some(load_clopen(&m, p)?)
        }
        None => None,
    };
    if let Some(k) = args.order {
        if k == 0 {
            return Err(usage("--order must be positive"));
        }
        r.input("order", k);
    }
    let predicate = |t: &TableMap| {
        maps.as_ref()
            .is_none_or(|(u, v)| t.image_clopen(u).is_ok_and(|i| &i == v))
            && args
                .order
                .is_none_or(|k| t.power_order(k) == Order::Finite(k))
            && support_in
                .as_ref()
                .is_none_or(|o| t.in_local_subgroup(o).unwrap_or(false))
    };
    // entries every satisfying table must use
    let filter = |d: &Word, img: &Word| {
        let maps_ok = maps.as_ref().is_none_or(|(u, v)| {
            if u.contains_cylinder(d) {
                v.contains_cylinder(img)
            } else if !u.meets_cylinder(d) {
                !v.meets_cylinder(img)
            } else {
                true
            }
        });
        let support_ok = support_in
            .as_ref()
            .is_none_or(|o| o.meets_cylinder(d) || d == img);
        maps_ok && support_ok
    };
    match witness_search_with(&m, search_bounds(&args.bounds), &predicate, &filter) {
        SearchOutcome::Found(t) => {
            r.detail("RESULT", "FOUND").detail("WITNESS", &t);
            r.check("witness satisfies the predicates", predicate(&t));
            if r.exit_code == 0 {
                r.verdict("FOUND");
            }
            write_opt(r, &args.output, &t.to_string())?;
        }
        SearchOutcome::Exhausted => {
            r.detail("RESULT", "EXHAUSTED").verdict("EXHAUSTED");
        }
        SearchOutcome::BudgetExceeded => {
            r.detail("RESULT", "BUDGET_EXCEEDED")
                .verdict("BUDGET_EXCEEDED");
        }
    }
    Ok(())
}

fn construct(r: &mut CommandReport, a: ConstructArgs) -> Outcome {
    let id = match a.lemma {
        Lemma::InvolutionInto => "2.1",
        Lemma::SwapInvolution => "2.2",
        Lemma::FreePair => "2.4",
        Lemma::Localize => "3.11",
        Lemma::CylinderInvolution => "4.1",
        Lemma::Transport => "4.3",
        Lemma::PairedTransport => "4.4",
        Lemma::Split => "4.7",
        Lemma::Minimality => "4.10",
    };
    r.input("construction", id)
        .input("matrix", a.matrix.display());
    let m = load_matrix(&a.matrix)?;
    let clopen =
        |r: &mut CommandReport, p: &Option<PathBuf>, flag: &str| -> Result<ClopenSet, Failure> {
            let p = required(p, flag, id)?;
            r.input(flag.trim_start_matches("--"), p.display());
            load_clopen(&m, p)
        };
    let table =
        |r: &mut CommandReport, p: &Option<PathBuf>, flag: &str| -> Result<TableMap, Failure> {
            let p = required(p, flag, id)?;
            r.input(flag.trim_start_matches("--"), p.display());
            load_table(&m, p)
        };
    let dir = &a.output_dir;
    match a.lemma {
        Lemma::InvolutionInto => {
            let u = clopen(r, &a.u, "--U")?;
            let y = clopen(r, &a.y, "--Y")?;
            let x = required(&a.x, "--x", id)?;
            r.input("x", x);
            let x = EpPoint::parse(&m, x)?;
            let out = involution_into(&u, &y, &x)?;
            r.detail("V", &out.v).detail("ALPHA", &out.alpha);
            r.checks(&out.verify());
            write_into(r, dir, "alpha.tbl", &out.alpha.to_string())?;
            write_into(r, dir, "v.clo", &out.v.to_string())
        }
        Lemma::SwapInvolution => {
            let u = clopen(r, &a.u, "--U")?;
            let v = clopen(r, &a.v, "--V")?;
            let g = table(r, &a.gamma, "--gamma")?;
            let out = swap_involution(&u, &v, &g)?;
            r.detail("ALPHA", &out.alpha);
            r.checks(&out.verify());
            write_into(r, dir, "alpha.tbl", &out.alpha.to_string())
        }
        Lemma::CylinderInvolution => {
            let nu = required(&a.nu, "--nu", id)?;
            r.input("nu", nu);
            let nu: Word = nu.parse()?;
            m.check_word(&nu)?;
            let v = clopen(r, &a.v, "--V")?;
            let out = cylinder_involution(&m, &nu, &v)?;
            r.detail("ALPHA", &out.alpha);
            r.checks(&out.verify());
            write_into(r, dir, "alpha.tbl", &out.alpha.to_string())
        }
        Lemma::Transport => {
            let u = clopen(r, &a.u, "--U")?;
            let w = clopen(r, &a.w, "--W")?;
            let out = clopen_transport(&u, &w)?;
            r.detail("ALPHA", &out.alpha);
            r.checks(&out.verify());
            write_into(r, dir, "alpha.tbl", &out.alpha.to_string())
        }
        Lemma::PairedTransport => {
            let o = clopen(r, &a.o, "--O")?;
            let u = clopen(r, &a.u, "--U")?;
            let v = clopen(r, &a.v, "--V")?;
            let w = clopen(r, &a.w, "--W")?;
            let w2 = clopen(r, &a.w2, "--W2")?;
            let g = table(r, &a.gamma, "--gamma")?;
            let out = paired_transport(&o, &u, &v, &w, &w2, &g)?;
            r.detail("PIECES", out.u_parts.len())
                .detail("U_PARTS", list(&out.u_parts))
                .detail("V_PARTS", list(&out.v_parts));
            r.checks(&out.verify());
            for (i, (al, be)) in out.alphas.iter().zip(&out.betas).enumerate() {
                write_into(r, dir, &format!("alpha_{}.tbl", i + 1), &al.to_string())?;
                write_into(r, dir, &format!("beta_{}.tbl", i + 1), &be.to_string())?;
            }
            Ok(())
        }
        Lemma::Split => {
            let g = table(r, &a.gamma, "--gamma")?;
            let o = clopen(r, &a.o, "--O")?;
            split(r, &g, &o, dir)
        }
        Lemma::Minimality => {
            let u = clopen(r, &a.u, "--U")?;
            let v = clopen(r, &a.v, "--V")?;
            let out = minimality_witness(&u, &v)?;
            r.detail("SOURCE", &out.source).detail("GAMMA", &out.gamma);
            r.checks(&out.verify());
            write_into(r, dir, "gamma.tbl", &out.gamma.to_string())
        }
        Lemma::FreePair => {
            let o = clopen(r, &a.o, "--O")?;
            let out = free_pair(&o)?;
            r.detail("ZETA", &out.zeta)
                .detail("XI", &out.xi)
                .detail("ETA", &out.eta)
                .detail("PSI", &out.psi)
                .detail("PHI", &out.phi)
                .detail("F", &out.f);
            r.checks(&out.verify());
            write_into(r, dir, "psi.tbl", &out.psi.to_string())?;
            write_into(r, dir, "phi.tbl", &out.phi.to_string())?;
            write_into(r, dir, "f.clo", &out.f.to_string())
        }
        Lemma::Localize => {
            let eta = table(r, &a.eta, "--eta")?;
            let u = clopen(r, &a.u, "--U")?;
            let o = clopen(r, &a.o, "--O")?;
            let out = localize_conjugate(&eta, &u, &o)?;
            r.detail("GAMMA", &out.gamma)
                .detail("CONJUGATE", &out.conjugate);
            r.checks(&out.verify());
            write_into(r, dir, "gamma.tbl", &out.gamma.to_string())?;
            write_into(r, dir, "conjugate.tbl", &out.conjugate.to_string())
        }
    }
}
