mod report;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use homlie::algebra::format::{parse_algebra, parse_matrix, write_algebra};
use homlie::algebra::HomAlgebra;
use homlie::basis_change::{
    apply_change, extract_psi_coefficients, law_vs_conjugation, realize, AdaptedChange, CParams,
};
use homlie::classification::{audit, classify, iso_bruteforce};
use homlie::cohomology::{cocycle_basis, cohomology, DeltaForm};
use homlie::filiform::{assemble, deformation_check, DeformationReport, PsiCoefficients};
use homlie::series::{central_series, derived_series, is_filiform, is_solvable, nilpotency};
use homlie::twisting::{apply as apply_twist, series_containment, TwistVariant};
use homlie::{Error, Field, Matrix, Result, Subspace};
use serde_json::{json, Value};

use report::{axioms, cochain, matrix, scalar, vector, Report, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};

const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "homlie", version, about = "Exact computations with Hom-Lie algebras")]
struct Cli {
    /// Seed for every sampling harness.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutArg {
    /// Write the resulting algebra file here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Hom-Jacobi, multiplicativity and Lie verdicts.
    Check { file: PathBuf },
    /// Central and derived series with nilpotency verdicts.
    Series { file: PathBuf },
    /// Cocycle, coboundary and cohomology dimensions.
    Cocycle {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// Restrict to twist-equivariant cochains.
        #[arg(long)]
        equivariant: bool,
        /// Coboundary used for the explicit basis: literal or circle.
        #[arg(long, default_value = "literal")]
        delta: String,
        /// Emit an explicit cocycle basis.
        #[arg(long)]
        basis: bool,
    },
    /// Builds a new algebra by twisting.
    Twist {
        file: PathBuf,
        /// yau | beta | derived:n | untwist
        #[arg(long)]
        variant: String,
        /// Map file for the yau and beta variants.
        #[arg(long)]
        map: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Applies an adapted change of basis.
    Change {
        file: PathBuf,
        /// sigma:b,k | tau:a,k | nu:a,b | general:a=v0,v1,..;b=w0,w1,..
        spec: String,
        /// Compare the closed-form coefficient law with conjugation, using
        /// the parameters c10,c11,c20.
        #[arg(long)]
        law: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Assembles a filiform deformation of the model algebra and checks it.
    Deform {
        #[arg(long)]
        n: usize,
        /// k,r=value (repeatable).
        #[arg(long = "coeff")]
        coeffs: Vec<String>,
        /// Twist map file, or "id".
        #[arg(long, default_value = "id")]
        alpha: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Reduces a filiform algebra to a table representative.
    Classify { file: PathBuf },
    /// Audits the classification tables on sampled parameters.
    Audit {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Audit the multiplicative tables instead.
        #[arg(long)]
        multiplicative: bool,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Exhaustive searches over small prime fields.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Searches for an isomorphism between two algebras over F_p.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Restrict to adapted changes.
        #[arg(long)]
        adapted: bool,
        #[arg(long, default_value_t = homlie::classification::iso::DEFAULT_BUDGET)]
        budget: u64,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let mut report = Report::new(argv[1..].to_vec(), cli.timing);
    let code = match run(&cli, &mut report) {
        Ok(code) => code,
        Err(e) => report.fail(&e),
    };
    let _ = writeln!(std::io::stdout().lock(), "{}", report.render(code));
    ExitCode::from(code as u8)
}

fn read(report: &mut Report, path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    report.input(&path.display().to_string(), &bytes);
    String::from_utf8(bytes).map_err(|_| Error::Input(format!("{}: not UTF-8", path.display())))
}

fn load(report: &mut Report, path: &Path) -> Result<HomAlgebra> {
    parse_algebra(&read(report, path)?)
}

fn emit(report: &mut Report, g: &HomAlgebra, out: &OutArg) -> Result<()> {
    let text = write_algebra(g);
    if let Some(path) = &out.out {
        std::fs::write(path, &text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        report.set("output_file", path.display().to_string());
    }
    report.set("algebra", text);
    Ok(())
}

fn run(cli: &Cli, report: &mut Report) -> Result<i32> {
    match &cli.command {
        Command::Check { file } => {
            let g = load(report, file)?;
            report.set("dim", g.dim());
            report.set("field", g.field().to_string());
            for (k, v) in axioms(&g).as_object().expect("object").clone() {
                report.set(&k, v);
            }
            if let Some(((i, j, k), defect)) = g.hom_jacobi_violation() {
                report.set("hom_jacobi_violation", json!({ "triple": [i, j, k], "defect": vector(&defect) }));
            }
            if let Some((i, j)) = g.multiplicative_violation() {
                report.set("multiplicative_violation", json!([i, j]));
            }
            Ok(if g.check_hom_jacobi() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Series { file } => {
            let g = load(report, file)?;
            let lower = central_series(&g);
            let derived = derived_series(&g, &Subspace::full(g.field(), g.dim()))?;
            let nil = nilpotency(&g);
            report.set("central_dims", json!(lower.dims));
            report.set("central_alpha_stable", json!(lower.alpha_stable));
            report.set("derived_dims", json!(derived.dims));
            report.set("derived_alpha_stable", json!(derived.alpha_stable));
            report.set("nilpotent", nil.nilpotent);
            report.set("nilindex", json!(nil.nilindex));
            report.set("filiform", is_filiform(&g));
            report.set("solvable", is_solvable(&g));
            Ok(EXIT_OK)
        }
        Command::Cocycle { file, arity, equivariant, delta, basis } => {
            let g = load(report, file)?;
            let form = match delta.as_str() {
                "literal" => DeltaForm::Literal,
                "circle" => DeltaForm::Circle,
                other => return Err(Error::Input(format!("unknown coboundary form '{other}'"))),
            };
            let r = cohomology(&g, *arity, *equivariant)?;
            report.set("arity", r.arity);
            report.set("equivariant", r.equivariant);
            report.set("cochain_dim", r.cochain_dim);
            report.set("cocycle_dim", r.cocycle_dim);
            report.set("coboundary_dim", r.coboundary_dim);
            report.set("delta_squared_zero", r.delta_squared_zero);
            report.set("cohomology_dim", json!(r.cohomology_dim));
            if let Some(d) = r.diagnostic {
                report.set("diagnostic", d);
            }
            if *basis {
                let b = cocycle_basis(&g, *arity, form)?;
                report.set("basis", Value::Array(b.iter().map(cochain).collect()));
            }
            Ok(EXIT_OK)
        }
        Command::Twist { file, variant, map, out } => {
            let g = load(report, file)?;
            let variant: TwistVariant = variant.parse()?;
            let m = match map {
                Some(p) => Some(parse_matrix(&read(report, p)?)?),
                None => None,
            };
            let t = apply_twist(variant, &g, m.as_ref())?;
            for (k, v) in axioms(&t).as_object().expect("object").clone() {
                report.set(&k, v);
            }
            let nil = nilpotency(&t);
            report.set("nilpotent", nil.nilpotent);
            report.set("nilindex", json!(nil.nilindex));
            report.set("filiform", is_filiform(&t));
            report.set("central_dims", json!(central_series(&t).dims));
            if variant == TwistVariant::Yau {
                report.set("series_contained", json!(series_containment(&t, &g)?));
            }
            emit(report, &t, out)?;
            Ok(EXIT_OK)
        }
        Command::Change { file, spec, law, out } => {
            let g = load(report, file)?;
            let change = AdaptedChange::parse(spec, g.field())?;
            let f = realize(&change, &g)?;
            let h = apply_change(&change, &g)?;
            report.set("change", change.to_string());
            report.set("matrix", matrix(&f));
            if let Some(text) = law {
                law_findings(report, &change, &g, text)?;
            }
            emit(report, &h, out)?;
            Ok(EXIT_OK)
        }
        Command::Deform { n, coeffs, alpha, field, out } => {
            let field: Field = field.parse()?;
            let mut psi = PsiCoefficients::new(field, *n);
            for c in coeffs {
                let (idx, value) = c
                    .split_once('=')
                    .ok_or_else(|| Error::Input(format!("coefficient '{c}' needs the form k,r=value")))?;
                let (k, r) = idx
                    .split_once(',')
                    .and_then(|(k, r)| Some((k.trim().parse().ok()?, r.trim().parse().ok()?)))
                    .ok_or_else(|| Error::Input(format!("coefficient index '{idx}' needs the form k,r")))?;
                psi.set(k, r, field.parse(value.trim())?)?;
            }
            let a = if alpha == "id" { None } else { Some(parse_matrix(&read(report, Path::new(alpha))?)?) };
            let g = assemble(&psi, a.as_ref())?;
            let d = deformation_check(&g)?;
            report.set("verdict", d.verdict);
            report.set("decoupling_shape", d.decoupling_shape);
            report.set("cocycle_zero", d.cocycle_zero());
            report.set("jacobi_zero", d.jacobi_zero());
            report.set("base_zero", d.base.is_zero());
            report.set("cocycle_residual_with_x0", cochain(&DeformationReport::with_zero(&d.cocycle)));
            report.set("cocycle_residual_without_x0", cochain(&DeformationReport::without_zero(&d.cocycle)));
            report.set("jacobi_residual", cochain(&d.jacobi));
            report.set("filiform", is_filiform(&g));
            emit(report, &g, out)?;
            Ok(if d.verdict { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Classify { file } => {
            let g = load(report, file)?;
            let r = classify(&g)?;
            report.set("name", r.label());
            report.set("classified", r.name.is_some());
            report.set("changes", json!(r.changes.iter().map(ToString::to_string).collect::<Vec<_>>()));
            report.set("adapted_basis", matrix(&r.basis));
            report.set("total_change", matrix(&r.total));
            report.set(
                "terminal_coefficients",
                json!(r
                    .terminal
                    .iter()
                    .map(|(&(k, r), v)| (format!("{k},{r}"), scalar(v)))
                    .collect::<BTreeMap<_, _>>()),
            );
            report.set("params", params(&r.params));
            report.set("alpha_fit", r.alpha_fit.as_ref().map_or(Value::Null, params));
            report.set(
                "verification",
                json!({
                    "recomposed": true,
                    "hom_jacobi": r.final_algebra.check_hom_jacobi(),
                    "filiform": is_filiform(&r.final_algebra),
                }),
            );
            report.set("diagnostics", json!(r.diagnostics));
            report.set("final_algebra", write_algebra(&r.final_algebra));
            Ok(if r.name.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Audit { dim, samples, multiplicative, field } => {
            let field: Field = field.parse()?;
            let rows = audit(*dim, *multiplicative, *samples, cli.seed, field)?;
            let mut table = Vec::new();
            for row in &rows {
                table.push(json!({
                    "label": row.label,
                    "source": row.source,
                    "status": row.status(),
                    "samples": row.samples,
                    "rejected_samples": row.rejected_samples,
                    "hom_jacobi_pass": row.hom_jacobi_pass,
                    "filiform_pass": row.filiform_pass,
                    "multiplicative_pass": row.multiplicative_pass,
                    "identity": row.identity.as_ref().map(|v| json!({
                        "hom_jacobi": v.hom_jacobi,
                        "filiform": v.filiform,
                        "multiplicative": v.multiplicative,
                    })),
                }));
                for f in &row.findings {
                    report.finding(
                        "table_audit",
                        json!({ "entry": row.label, "check": f.check, "params": params(&f.params), "seed": cli.seed }),
                    );
                }
            }
            report.set("dim", *dim);
            report.set("multiplicative", *multiplicative);
            report.set("seed", cli.seed);
            report.set("table", Value::Array(table));
            Ok(EXIT_OK)
        }
        Command::Oracle { command: OracleCommand::Iso { first, second, p, adapted, budget } } => {
            let field = Field::prime(*p)?;
            let g1 = reduce(&load(report, first)?, field)?;
            let g2 = reduce(&load(report, second)?, field)?;
            let r = iso_bruteforce(&g1, &g2, *adapted, *budget)?;
            report.set("p", *p);
            report.set("adapted", *adapted);
            report.set("isomorphic", r.isomorphic);
            report.set("candidates", r.candidates);
            report.set("witness", r.witness.as_ref().map_or(Value::Null, matrix));
            Ok(if r.isomorphic { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

fn params(p: &BTreeMap<String, homlie::Scalar>) -> Value {
    json!(p.iter().map(|(k, v)| (k.clone(), scalar(v))).collect::<BTreeMap<_, _>>())
}

/// Reads a rational algebra modulo `p`; algebras already over `field` pass through.
fn reduce(g: &HomAlgebra, field: Field) -> Result<HomAlgebra> {
    if g.field() == field {
        return Ok(g.clone());
    }
    let Field::Rational = g.field() else {
        return Err(Error::FieldMismatch(g.field(), field));
    };
    let conv = |s: &homlie::Scalar| field.from_rational(s.as_rational().expect("rational scalar"));
    let n = g.dim();
    let mut out = HomAlgebra::new(field, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = g.bracket_basis(i, j).iter().map(conv).collect::<Result<Vec<_>>>()?;
            out.set_bracket(i, j, &v)?;
        }
    }
    let rows = g.alpha().row_vectors().iter().map(|r| r.iter().map(conv).collect()).collect::<Result<Vec<_>>>()?;
    out.set_alpha(Matrix::from_rows(field, rows)?)?;
    Ok(out)
}

fn law_findings(report: &mut Report, change: &AdaptedChange, g: &HomAlgebra, text: &str) -> Result<()> {
    let AdaptedChange::Elementary(e) = change else {
        return Err(Error::Input("coefficient laws exist for elementary changes only".into()));
    };
    let parts: Vec<&str> = text.split(',').collect();
    let [c10, c11, c20] = parts[..] else {
        return Err(Error::Input("--law needs c10,c11,c20".into()));
    };
    let field = g.field();
    let c = CParams { c10: field.parse(c10.trim())?, c11: field.parse(c11.trim())?, c20: field.parse(c20.trim())? };
    let coeffs = extract_psi_coefficients(g)?;
    let alpha = (!g.alpha().is_identity()).then(|| g.alpha().clone());
    let cmp = law_vs_conjugation(e, &coeffs, alpha.as_ref(), &c);
    report.set("law_matches", cmp.matches());
    if let Err(msg) = &cmp.law {
        report.set("law_error", msg.clone());
    }
    for m in &cmp.mismatches {
        report.finding(
            "law_vs_conjugation",
            json!({
                "change": change.to_string(),
                "coefficient": format!("{},{}", m.index.0, m.index.1),
                "law": scalar(&m.law),
                "conjugated": scalar(&m.conjugated),
                "c": [scalar(&c.c10), scalar(&c.c11), scalar(&c.c20)],
            }),
        );
    }
    Ok(())
}
