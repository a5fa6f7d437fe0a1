use std::error::Error;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use involution_paths::bijection::{self, CoupledPath};
use involution_paths::formula::closed_form;
use involution_paths::perm::{enumerate, Constraint};
use involution_paths::qalg::{e_spec, q_binomial, q_factorial, q_int};
use involution_paths::rsk::{rsk, transpose_involution};
use involution_paths::sign::{build_fixed, Builder, Involution, InvolutionCase};
use involution_paths::verify::{
    check, check_involution_contracts, genfun_counted, verify_all, CheckOptions, GenFunSpec, IdentityId,
    VerificationReport,
};
use involution_paths::{Exec, Family, LatticePath, LaurentPoly, Permutation, Stat};

type Result<T> = std::result::Result<T, Box<dyn Error>>;

/// Involutions, lattice paths and exact major-balance identities.
#[derive(Parser)]
#[command(name = "ipaths", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Execution mode for sweeps: parallel or sequential.
    #[arg(long, global = true, default_value = "parallel")]
    exec: Exec,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Statistics of a permutation.
    Stats {
        #[arg(long)]
        perm: Permutation,
    },
    /// Apply one of the bijections.
    Map {
        #[arg(value_enum)]
        map: MapKind,
        #[arg(long)]
        perm: Option<Permutation>,
        #[arg(long)]
        path: Option<LatticePath>,
        /// Permutation length for `from-grand` (defaults to the path length).
        #[arg(long)]
        n: Option<usize>,
    },
    /// The sign-reversing involutions on grand Dyck paths.
    Involution {
        #[command(subcommand)]
        action: InvolutionCmd,
    },
    /// List a permutation family.
    Enumerate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Keep only members with `stat=value`, e.g. `lead=2`.
        #[arg(long = "where")]
        filter: Option<Constraint>,
    },
    /// Signed, weighted generating function of a family.
    Genfun {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Statistic in the exponent of -1.
        #[arg(long)]
        sign: Option<Stat>,
        /// Statistic in the exponent of q.
        #[arg(long)]
        weight: Option<Stat>,
        /// Multiplier on the weight exponent.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        scale: i64,
        #[arg(long = "where")]
        filter: Option<Constraint>,
    },
    /// q-analogues and closed forms.
    Qpoly {
        #[command(subcommand)]
        op: QpolyCmd,
    },
    /// Check one identity.
    Verify {
        #[arg(long)]
        id: IdentityId,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        ell: Option<i64>,
        /// Run even above the size bounds.
        #[arg(long)]
        override_bounds: bool,
    },
    /// Check every identity over its default range.
    VerifyAll {
        /// Largest permutation length to enumerate.
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Delta,
    DeltaInv,
    Xi,
    XiInv,
    ToGrand,
    FromGrand,
    Transpose,
    Rsk,
}

#[derive(Subcommand)]
enum InvolutionCmd {
    /// Apply phi1..phi4 to a path.
    Apply {
        #[arg(long)]
        which: Involution,
        #[arg(long)]
        path: LatticePath,
    },
    /// Whether a path is fixed.
    IsFixed {
        #[arg(long)]
        which: Involution,
        #[arg(long)]
        path: LatticePath,
    },
    /// Build a fixed point from a half-size path.
    Build {
        #[arg(long)]
        builder: Builder,
        #[arg(long)]
        path: LatticePath,
    },
    /// Exhaustive contract sweep over a whole domain.
    Contracts {
        #[arg(long)]
        which: Involution,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        override_bounds: bool,
    },
}

#[derive(Subcommand)]
enum QpolyCmd {
    /// `[n]_q`.
    Int {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        at: Option<i64>,
    },
    /// `[n]!_q`.
    Factorial {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        at: Option<i64>,
    },
    /// Gaussian binomial `[n, k]_q`.
    Binom {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, allow_negative_numbers = true)]
        at: Option<i64>,
    },
    /// `e_k(q^low, ..., q^high)`.
    Espec {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, allow_negative_numbers = true)]
        low: i64,
        #[arg(long, allow_negative_numbers = true)]
        high: i64,
        #[arg(long, allow_negative_numbers = true)]
        at: Option<i64>,
    },
    /// Right-hand side of a named identity.
    Closed {
        #[arg(long)]
        id: IdentityId,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        ell: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        at: Option<i64>,
    },
}

/// One command's result in every output format.
struct Output {
    text: String,
    json: Value,
    /// Header row first.
    rows: Vec<Vec<String>>,
    mismatch: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value, rows: Vec<Vec<String>>) -> Self {
        Output {
            text: text.into(),
            json,
            rows,
            mismatch: false,
        }
    }

    fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Text => format!("{}\n", self.text.trim_end()),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json)?),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.rows {
                    w.write_record(row)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
        })
    }
}

fn row<I: IntoIterator<Item = S>, S: ToString>(cells: I) -> Vec<String> {
    cells.into_iter().map(|c| c.to_string()).collect()
}

fn points(ps: &[involution_paths::LatticePoint]) -> Value {
    Value::Array(ps.iter().map(|p| json!([p.x, p.y])).collect())
}

fn poly_output(poly: &LaurentPoly, at: Option<i64>) -> Result<Output> {
    Ok(match at {
        Some(x) => {
            let v = poly.evaluate(x)?;
            Output::new(
                v.to_string(),
                json!({"poly": poly, "poly_text": poly.to_string(), "at": x, "value": v.to_string()}),
                vec![
                    row(["poly", "at", "value"]),
                    row([poly.to_string(), x.to_string(), v.to_string()]),
                ],
            )
        }
        None => Output::new(
            poly.to_string(),
            json!({"poly": poly, "poly_text": poly.to_string()}),
            vec![row(["poly"]), row([poly.to_string()])],
        ),
    })
}

fn path_json(p: &LatticePath) -> Value {
    json!({"path": p, "sump": p.sump(), "peaks": points(&p.peaks())})
}

fn run_map(map: MapKind, perm: Option<Permutation>, path: Option<LatticePath>, n: Option<usize>) -> Result<Output> {
    let need_perm = || perm.clone().ok_or("this map needs --perm");
    let need_path = || path.clone().ok_or("this map needs --path");
    let perm_to_path = |input: &Permutation, output: LatticePath, extra: Value| {
        let mut j = json!({"input": input, "output": output.to_string(), "sump": output.sump(), "peaks": points(&output.peaks())});
        if let (Value::Object(m), Value::Object(e)) = (&mut j, extra) {
            m.extend(e);
        }
        let rows = vec![
            row(["input", "output", "sump"]),
            row([input.to_string(), output.to_string(), output.sump().to_string()]),
        ];
        Output::new(output.to_string(), j, rows)
    };
    let path_to_perm = |input: &LatticePath, output: Permutation| {
        let j = json!({"input": input, "input_sump": input.sump(), "output": output, "cycles": output.cycle_notation(), "maj": output.stats().maj});
        let rows = vec![
            row(["input", "output", "cycles"]),
            row([input.to_string(), output.to_string(), output.cycle_notation()]),
        ];
        Output::new(output.to_string(), j, rows)
    };
    let path_to_path = |input: &LatticePath, output: LatticePath, extra: Value| {
        let mut j = json!({"input": path_json(input), "output": path_json(&output)});
        if let (Value::Object(m), Value::Object(e)) = (&mut j, extra) {
            m.extend(e);
        }
        let rows = vec![row(["input", "output"]), row([input.to_string(), output.to_string()])];
        Output::new(output.to_string(), j, rows)
    };
    Ok(match map {
        MapKind::Delta => {
            let p = need_perm()?;
            perm_to_path(&p, bijection::delta(&p)?, json!({}))
        }
        MapKind::ToGrand => {
            let p = need_perm()?;
            perm_to_path(&p, bijection::to_grand(&p)?, json!({}))
        }
        MapKind::DeltaInv => {
            let t = need_path()?;
            path_to_perm(&t, bijection::delta_inv(&t)?)
        }
        MapKind::FromGrand => {
            let t = need_path()?;
            let n = n.unwrap_or(t.len());
            path_to_perm(&t, bijection::from_grand(&t, n)?)
        }
        MapKind::Xi => {
            let t = need_path()?;
            let image = bijection::xi(&t)?;
            let unmatched = CoupledPath::facing(&t).uncoupled;
            path_to_path(&t, image, json!({"unmatched_north": unmatched}))
        }
        MapKind::XiInv => {
            let t = need_path()?;
            let unmatched = CoupledPath::facing(&t).uncoupled_east;
            path_to_path(&t, bijection::xi_inv(&t)?, json!({"unmatched_east": unmatched}))
        }
        MapKind::Transpose => {
            let p = need_perm()?;
            let t = transpose_involution(&p)?;
            let j = json!({"input": p, "output": t, "input_des_set": p.stats().des_set, "output_des_set": t.stats().des_set});
            Output::new(
                t.to_string(),
                j,
                vec![row(["input", "output"]), row([p.to_string(), t.to_string()])],
            )
        }
        MapKind::Rsk => {
            let p = need_perm()?;
            let (pt, qt) = rsk(&p);
            Output::new(
                format!("P = {pt}\nQ = {qt}"),
                json!({"input": p, "P": pt, "Q": qt}),
                vec![
                    row(["input", "P", "Q"]),
                    row([p.to_string(), pt.to_string(), qt.to_string()]),
                ],
            )
        }
    })
}

fn run_involution(action: InvolutionCmd, exec: Exec) -> Result<Output> {
    Ok(match action {
        InvolutionCmd::Apply { which, path } => {
            let case = InvolutionCase::for_path(which, &path)?;
            let image = case.apply(&path)?;
            let fixed = image == path;
            let j = json!({"which": which, "n": case.n, "input": path_json(&path), "output": path_json(&image), "fixed": fixed});
            Output::new(
                image.to_string(),
                j,
                vec![
                    row(["which", "input", "output", "fixed"]),
                    row([
                        which.to_string(),
                        path.to_string(),
                        image.to_string(),
                        fixed.to_string(),
                    ]),
                ],
            )
        }
        InvolutionCmd::IsFixed { which, path } => {
            let fixed = InvolutionCase::for_path(which, &path)?.is_fixed(&path)?;
            Output::new(
                fixed.to_string(),
                json!({"which": which, "path": path, "fixed": fixed}),
                vec![
                    row(["which", "path", "fixed"]),
                    row([which.to_string(), path.to_string(), fixed.to_string()]),
                ],
            )
        }
        InvolutionCmd::Build { builder, path } => {
            let image = build_fixed(builder, &path)?;
            let j = json!({"builder": builder, "source": path, "output": path_json(&image), "subset": image.b_subset_index().ok()});
            Output::new(
                image.to_string(),
                j,
                vec![
                    row(["builder", "source", "output", "sump"]),
                    row([
                        builder.to_string(),
                        path.to_string(),
                        image.to_string(),
                        image.sump().to_string(),
                    ]),
                ],
            )
        }
        InvolutionCmd::Contracts {
            which,
            n,
            override_bounds,
        } => {
            if override_bounds {
                eprintln!("warning: running above the default size bounds");
            }
            let r = check_involution_contracts(InvolutionCase::new(which, n), CheckOptions { exec, override_bounds })?;
            let s = &r.sweep;
            let mut text = format!(
                "{} n={}: domain {} paths, {} fixed\n\
                 involution failures: {}\nsubset failures: {}\nparity failures: {}\n\
                 fixed set equals constructions: {}\n",
                which,
                n,
                s.domain_size,
                s.fixed_count,
                s.involution_failures,
                s.subset_failures,
                s.parity_failures,
                s.fixed_set_equal
            );
            if let Some(g) = s.geometric_failures {
                text.push_str(&format!("geometric disagreements: {g}\n"));
            }
            match &s.cardinality_failures {
                Some(f) if f.is_empty() => text.push_str("cardinality laws: hold\n"),
                Some(f) => text.push_str(&format!("cardinality laws: {}\n", f.join("; "))),
                None => text.push_str("cardinality laws: not checked\n"),
            }
            text.push_str(&format!(
                "signed sum: {}\nall contracts hold: {}",
                r.report.lhs_text, r.report.equal
            ));
            let rows = vec![
                row(["which", "n", "domain", "fixed", "equal"]),
                row([
                    which.to_string(),
                    n.to_string(),
                    s.domain_size.to_string(),
                    s.fixed_count.to_string(),
                    r.report.equal.to_string(),
                ]),
            ];
            let mut out = Output::new(text, serde_json::to_value(&r)?, rows);
            out.mismatch = !r.report.equal;
            out
        }
    })
}

fn run_qpoly(op: QpolyCmd, exec: Exec) -> Result<Output> {
    match op {
        QpolyCmd::Int { n, at } => poly_output(&q_int(n), at),
        QpolyCmd::Factorial { n, at } => poly_output(&q_factorial(n), at),
        QpolyCmd::Binom { n, k, at } => poly_output(&q_binomial(n, k), at),
        QpolyCmd::Espec { k, low, high, at } => poly_output(&e_spec(k, low, high), at),
        QpolyCmd::Closed { id, n, k, ell, at } => {
            let f = involution_paths::formula::QFormula::new(id, n, k.or(ell))?;
            poly_output(&closed_form(&f, exec), at)
        }
    }
}

fn report_row(r: &VerificationReport) -> Vec<String> {
    let param = r
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    row([
        r.id.clone(),
        r.n.to_string(),
        param,
        r.equal.to_string(),
        r.elapsed_ms.to_string(),
        r.lhs_text.clone(),
        r.rhs_text.clone(),
    ])
}

const REPORT_HEADER: [&str; 7] = ["id", "n", "param", "equal", "elapsed_ms", "lhs", "rhs"];

fn run(cli: Cli) -> Result<Output> {
    let exec = cli.exec;
    match cli.command {
        Command::Stats { perm } => {
            let s = perm.stats();
            let des_set = s.des_set.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let lead = s.lead.unwrap_or(0);
            let text = format!(
                "perm: {perm}\ninv: {}\ndes_set: {{{des_set}}}\ndes: {}\nmaj: {}\nldes: {}\nlead: {lead}",
                s.inv, s.des, s.maj, s.ldes
            );
            let mut j = serde_json::to_value(&s)?;
            j["perm"] = serde_json::to_value(&perm)?;
            let rows = vec![
                row(["perm", "inv", "des_set", "des", "maj", "ldes", "lead"]),
                row([
                    perm.to_string(),
                    s.inv.to_string(),
                    des_set,
                    s.des.to_string(),
                    s.maj.to_string(),
                    s.ldes.to_string(),
                    lead.to_string(),
                ]),
            ];
            Ok(Output::new(text, j, rows))
        }
        Command::Map { map, perm, path, n } => run_map(map, perm, path, n),
        Command::Involution { action } => run_involution(action, exec),
        Command::Enumerate { family, n, filter } => {
            let members: Vec<Permutation> = enumerate(family, n)
                .into_iter()
                .filter(|p| filter.is_none_or(|c| c.accepts(p.entries())))
                .collect();
            let text = members.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n");
            let mut rows = vec![row(["perm", "inv", "des", "maj", "ldes", "lead"])];
            for p in &members {
                rows.push(row(
                    std::iter::once(p.to_string()).chain(Stat::ALL.iter().map(|&s| p.stat(s).to_string()))
                ));
            }
            let text = if text.is_empty() { "(none)".to_string() } else { text };
            Ok(Output::new(
                text,
                json!({"family": family, "n": n, "count": members.len(), "members": members}),
                rows,
            ))
        }
        Command::Genfun {
            family,
            n,
            sign,
            weight,
            scale,
            filter,
        } => {
            let spec = GenFunSpec {
                family,
                n,
                sign,
                weight,
                scale,
                filter,
            };
            let (poly, count) = genfun_counted(&spec, exec);
            Ok(Output::new(
                poly.to_string(),
                json!({"spec": spec, "count": count, "poly": poly, "poly_text": poly.to_string()}),
                vec![
                    row(["family", "n", "count", "poly"]),
                    row([family.to_string(), n.to_string(), count.to_string(), poly.to_string()]),
                ],
            ))
        }
        Command::Qpoly { op } => run_qpoly(op, exec),
        Command::Verify {
            id,
            n,
            k,
            ell,
            override_bounds,
        } => {
            if override_bounds {
                eprintln!("warning: running above the default size bounds");
            }
            let r = check(id, n, k.or(ell), CheckOptions { exec, override_bounds })?;
            let mut text = format!(
                "{}: lhs = {}\n{}: rhs = {}\nequal: {}",
                r.id, r.lhs_text, r.id, r.rhs_text, r.equal
            );
            if !r.params.is_empty() {
                text = format!("{}\n{text}", report_row(&r)[2]);
            }
            let rows = vec![row(REPORT_HEADER), report_row(&r)];
            let mut out = Output::new(text, serde_json::to_value(&r)?, rows);
            out.mismatch = !r.equal;
            Ok(out)
        }
        Command::VerifyAll { n_max } => {
            let reports = verify_all(n_max, exec);
            let failures = reports.iter().filter(|r| !r.equal).count();
            let mut text = format!("{:<11} {:>3} {:<7} {:<6} {:>8}\n", "id", "n", "param", "equal", "ms");
            for r in &reports {
                let cells = report_row(r);
                text.push_str(&format!(
                    "{:<11} {:>3} {:<7} {:<6} {:>8}\n",
                    cells[0], cells[1], cells[2], cells[3], cells[4]
                ));
            }
            text.push_str(&format!("{} checks, {} mismatches", reports.len(), failures));
            let mut rows = vec![row(REPORT_HEADER)];
            rows.extend(reports.iter().map(report_row));
            let mut out = Output::new(text, serde_json::to_value(&reports)?, rows);
            out.mismatch = failures > 0;
            Ok(out)
        }
    }
}

fn emit(rendered: &str, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, rendered),
        None => io::stdout().write_all(rendered.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let out_path = cli.out.clone();
    let result = run(cli).and_then(|o| Ok((o.render(format)?, o.mismatch)));
    match result {
        Ok((rendered, mismatch)) => {
            if let Err(e) = emit(&rendered, out_path.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if mismatch {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
