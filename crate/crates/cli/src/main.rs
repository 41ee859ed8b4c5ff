use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use csalg_core::centroid::{centroid_basis, is_scalar_action};
use csalg_core::coefficients::{CycloField, Exponent, DEFAULT_CONDUCTOR};
use csalg_core::cohomology::{n4_invariant, pgl2_classes};
use csalg_core::conformal::{check_axioms, lambda_bracket, n_product, AlgebraDef, Parity};
use csalg_core::dsl::{
    format_element, format_lambda_poly, parse_algebra, parse_element, parse_exponent, parse_matrix,
    parse_mode, parse_morphism,
};
use csalg_core::loops::{
    alg_bracket_elts, eigenspaces, l0_spectrum, loop_membership, split_check, LoopAlgebra,
};
use csalg_core::morphisms::{check_hom, n2_omega, n4_auto, order_of, GenMorphism, Sl2OverS};
use csalg_core::Error;

#[derive(Parser)]
#[command(name = "csalg", version, about = "Exact computations with conformal superalgebras and their twisted loops")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the axioms CS0-CS5 for an algebra file.
    Check { file: PathBuf },
    /// Lambda-bracket of two elements, or their n-th product with --n.
    Bracket {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Check that a morphism file defines a homomorphism.
    Hom { file: PathBuf, morphism: PathBuf },
    /// Eigenbasis, closure, split check and L_0 spectrum of a twisted loop algebra.
    Loop {
        file: PathBuf,
        #[arg(long = "auto")]
        auto: String,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Bracket of two modes in the mode algebra, e.g. "L[2] L[-1]".
    Alg {
        file: PathBuf,
        #[arg(long = "auto")]
        auto: String,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        bracket: String,
    },
    /// Conjugacy invariant of a finite-order matrix in SL_2, written "a,b;c,d".
    ClassifyN4 {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_CONDUCTOR)]
        conductor: u32,
    },
    /// Conjugacy classes of PGL_2 of order dividing N.
    Pgl2Classes {
        n: u32,
        /// Defaults to lcm(24, 2N).
        #[arg(long)]
        conductor: Option<u32>,
    },
    /// Homogeneous centroid elements of a twisted loop algebra on a window.
    Centroid {
        file: PathBuf,
        #[arg(long = "auto")]
        auto: String,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        window: String,
        #[arg(long)]
        interior: String,
    },
}

enum Failure {
    Check(Value, String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<(Value, String), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::UnknownGenerator(_) => 2,
        _ => 3,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ConductorMismatch { .. } => "conductor",
        Error::UnknownGenerator(_) => "unknown_generator",
        Error::LevelMismatch(_) => "level",
        Error::Cs4Inconsistent { .. } => "cs4",
        Error::ParityMismatch(_) => "parity",
        Error::JacobiFailure(_) => "jacobi",
        Error::NonUnit(_) => "non_unit",
        Error::Determinant(_) => "determinant",
        Error::NotInvertible(_) => "not_invertible",
        Error::OrderMismatch(_) => "order",
        Error::NotSemisimple => "not_semisimple",
        Error::CosetViolation { .. } => "coset",
        Error::LNotFixed => "l_not_fixed",
        Error::WindowTooSmall(_) => "window",
        Error::NotFiniteOrder => "not_finite_order",
        Error::Parse { .. } => "parse",
        Error::Invalid(_) => "invalid",
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<AlgebraDef, Error> {
    parse_algebra(&read(path)?).map_err(|e| match e {
        Error::Parse { line, col, msg } => Error::Parse {
            line,
            col,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    })
}

fn resolve_auto(alg: &AlgebraDef, auto: &str) -> Result<GenMorphism, Error> {
    match auto {
        "id" => Ok(GenMorphism::identity(alg, 1)),
        "omega" => n2_omega(alg),
        _ => {
            if let Some(m) = auto.strip_prefix("n4x:") {
                let x = parse_matrix(alg.field(), m)?;
                n4_auto(alg, &Sl2OverS::identity(alg.field()), &x)
            } else {
                parse_morphism(alg, &read(Path::new(auto))?)
            }
        }
    }
}

fn build_loop(file: &Path, auto: &str, order: Option<u32>) -> Result<LoopAlgebra, Error> {
    let alg = load_algebra(file)?;
    let sigma = resolve_auto(&alg, auto)?;
    let m = match order {
        Some(m) => m,
        None => order_of(&sigma, alg.conductor())?.ok_or_else(|| {
            Error::OrderMismatch(format!("{} has no order dividing {}", sigma.name, alg.conductor()))
        })?,
    };
    eigenspaces(&alg, &sigma, m)
}

fn cmd_check(file: &Path) -> Outcome {
    let alg = load_algebra(file)?;
    let report = check_axioms(&alg);
    let mut text = String::new();
    let mut axioms = Vec::new();
    for v in &report.verdicts {
        let verdict = if v.passed() { "ok" } else { "FAILED" };
        text.push_str(&format!("{} {verdict} ({} checks)\n", v.axiom.name(), v.checked));
        for f in &v.failures {
            text.push_str(&format!("  {f}\n"));
        }
        axioms.push(json!({
            "axiom": v.axiom.name(),
            "checked": v.checked,
            "passed": v.passed(),
            "failures": v.failures,
        }));
    }
    let value = json!({
        "command": "check",
        "algebra": alg.name,
        "passed": report.all_passed(),
        "axioms": axioms,
    });
    if report.all_passed() {
        Ok((value, text))
    } else {
        Err(Failure::Check(value, text))
    }
}

fn cmd_bracket(file: &Path, a: &str, b: &str, n: Option<u32>) -> Outcome {
    let alg = load_algebra(file)?;
    let x = parse_element(&alg, a)?;
    let y = parse_element(&alg, b)?;
    let result = match n {
        Some(n) => format_element(&alg, &n_product(&alg, &x, &y, n)?),
        None => format_lambda_poly(&alg, &lambda_bracket(&alg, &x, &y)?),
    };
    let value = json!({
        "command": "bracket",
        "a": format_element(&alg, &x),
        "b": format_element(&alg, &y),
        "n": n,
        "result": result,
    });
    Ok((value, format!("{result}\n")))
}

fn cmd_hom(file: &Path, morphism: &Path) -> Outcome {
    let alg = load_algebra(file)?;
    let phi = parse_morphism(&alg, &read(morphism)?)?;
    let report = check_hom(&alg, &phi)?;
    let mut text = format!(
        "{}: {} of {} generator pairs fail\n",
        phi.name,
        report.failures.len(),
        report.pairs_checked
    );
    for (a, b) in &report.failures {
        text.push_str(&format!("  [{a} lambda {b}]\n"));
    }
    let inv = match report.invertible {
        Some(true) => "invertible",
        Some(false) => "not invertible",
        None => "invertibility unknown",
    };
    text.push_str(&format!(
        "{}, {inv}\n",
        if report.is_homomorphism() { "homomorphism" } else { "not a homomorphism" }
    ));
    let value = json!({
        "command": "hom",
        "morphism": phi.name,
        "level": phi.level(),
        "pairs_checked": report.pairs_checked,
        "failures": report.failures,
        "homomorphism": report.is_homomorphism(),
        "invertible": report.invertible,
        "automorphism": report.is_automorphism(),
    });
    if report.is_homomorphism() {
        Ok((value, text))
    } else {
        Err(Failure::Check(value, text))
    }
}

/// Brackets of the basis vectors at the two lowest modes of each coset stay in the loop algebra.
fn closure(l: &LoopAlgebra) -> Result<(usize, bool), Error> {
    let m = l.order() as i64;
    let k = l.basis().len();
    let mut checked = 0;
    let mut ok = true;
    for i in 0..k {
        for j in 0..k {
            for (s, u) in [(0, 0), (-1, 0), (0, -1), (-1, -1)] {
                let ri = l.basis()[i].residue as i64;
                let rj = l.basis()[j].residue as i64;
                let x = l.element(i).shift(Exponent::new(ri + s * m, m));
                let y = l.element(j).shift(Exponent::new(rj + u * m, m));
                let p = lambda_bracket(l.base(), &x, &y)?;
                checked += 1;
                ok &= p.coeffs().values().all(|c| loop_membership(l, c));
            }
        }
    }
    Ok((checked, ok))
}

fn fmt_set(set: &std::collections::BTreeSet<csalg_core::coefficients::Rational>) -> Vec<String> {
    set.iter().map(csalg_core::coefficients::fmt_rational).collect()
}

fn cmd_loop(file: &Path, auto: &str, order: Option<u32>, window: &str) -> Outcome {
    let l = build_loop(file, auto, order)?;
    let w = parse_exponent(window)?;
    let mut text = format!("order {}\n", l.order());
    let mut basis = Vec::new();
    for (i, v) in l.basis().iter().enumerate() {
        text.push_str(&format!(
            "  residue {} {}: {}\n",
            v.residue,
            v.parity,
            l.basis_name(i)
        ));
        basis.push(json!({
            "residue": v.residue,
            "parity": v.parity.to_string(),
            "name": l.basis_name(i),
        }));
    }
    let (checked, closed) = closure(&l)?;
    text.push_str(&format!(
        "closure: {} ({checked} products)\n",
        if closed { "ok" } else { "FAILED" }
    ));
    let split = split_check(&l, w)?;
    text.push_str(&format!(
        "split on window {w}: rank {} of domain {} and codomain {}, {}\n",
        split.rank,
        split.domain_dim,
        split.codomain_dim,
        if split.bijective() { "bijective" } else { "not bijective" }
    ));
    let mut spectra = serde_json::Map::new();
    for parity in [Parity::Even, Parity::Odd] {
        match l0_spectrum(&l, parity, w) {
            Ok(s) => {
                text.push_str(&format!(
                    "L0 {parity}: eigenvalues {{{}}}, fractional parts {{{}}}\n",
                    fmt_set(&s.eigenvalues).join(", "),
                    fmt_set(&s.fractional).join(", ")
                ));
                spectra.insert(
                    parity.to_string(),
                    json!({"eigenvalues": fmt_set(&s.eigenvalues), "fractional": fmt_set(&s.fractional)}),
                );
            }
            Err(e) => {
                text.push_str(&format!("L0 {parity}: unavailable ({e})\n"));
                spectra.insert(parity.to_string(), json!({"error": e.to_string()}));
            }
        }
    }
    let value = json!({
        "command": "loop",
        "order": l.order(),
        "basis": basis,
        "closure": {"checked": checked, "closed": closed},
        "split": {
            "window": w.to_string(),
            "domain_dim": split.domain_dim,
            "codomain_dim": split.codomain_dim,
            "rank": split.rank,
            "bijective": split.bijective(),
        },
        "l0_spectrum": spectra,
    });
    if closed && split.bijective() {
        Ok((value, text))
    } else {
        Err(Failure::Check(value, text))
    }
}

fn cmd_alg(file: &Path, auto: &str, order: Option<u32>, bracket: &str) -> Outcome {
    let l = build_loop(file, auto, order)?;
    let modes: Vec<&str> = bracket.split_whitespace().collect();
    let [a, b] = modes[..] else {
        return Err(Error::parse(1, 1, "expected two modes, e.g. \"L[2] L[-1]\"").into());
    };
    let (ga, mu) = parse_mode(l.base(), a)?;
    let (gb, nu) = parse_mode(l.base(), b)?;
    let x = l.generator_mode(ga, mu)?;
    let y = l.generator_mode(gb, nu)?;
    let result = l.format_alg(&alg_bracket_elts(&l, &x, &y)?);
    let value = json!({
        "command": "alg",
        "order": l.order(),
        "a": l.format_alg(&x),
        "b": l.format_alg(&y),
        "result": result,
    });
    Ok((value, format!("{result}\n")))
}

fn cmd_classify(matrix: &str, conductor: u32) -> Outcome {
    let field = CycloField::get(conductor);
    let x = parse_matrix(field, matrix)?;
    let inv = n4_invariant(&x)?;
    let value = json!({
        "command": "classify-n4",
        "conductor": conductor,
        "invariant": inv.to_string(),
        "order": inv.order,
    });
    Ok((value, format!("{inv}\n")))
}

fn cmd_pgl2(n: u32, conductor: Option<u32>) -> Outcome {
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()).into());
    }
    let conductor = conductor.unwrap_or_else(|| num_integer::lcm(DEFAULT_CONDUCTOR, 2 * n));
    let classes = pgl2_classes(CycloField::get(conductor), n)?;
    let names: Vec<String> = classes.iter().map(ToString::to_string).collect();
    let mut text = format!("{} classes\n", names.len());
    for c in &names {
        text.push_str(&format!("  {c}\n"));
    }
    let value = json!({
        "command": "pgl2-classes",
        "n": n,
        "conductor": conductor,
        "count": names.len(),
        "classes": names,
    });
    Ok((value, text))
}

fn cmd_centroid(file: &Path, auto: &str, order: Option<u32>, window: &str, interior: &str) -> Outcome {
    let l = build_loop(file, auto, order)?;
    let w = parse_exponent(window)?;
    let wi = parse_exponent(interior)?;
    let sols = centroid_basis(&l, w, wi)?;
    let mut text = format!("{} solutions\n", sols.len());
    let mut rs = Vec::new();
    let mut all_scalar = true;
    for chi in &sols {
        let r = is_scalar_action(&l, chi);
        all_scalar &= r.is_some();
        let shown = r.map_or_else(|| "not a scalar".to_string(), |r| r.to_string());
        text.push_str(&format!("  shift {}: r = {shown}\n", chi.shift));
        rs.push(json!({"shift": chi.shift.to_string(), "r": shown}));
    }
    let value = json!({
        "command": "centroid",
        "order": l.order(),
        "window": w.to_string(),
        "interior": wi.to_string(),
        "count": sols.len(),
        "all_scalar": all_scalar,
        "solutions": rs,
    });
    if all_scalar {
        Ok((value, text))
    } else {
        Err(Failure::Check(value, text))
    }
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Check { file } => cmd_check(file),
        Command::Bracket { file, a, b, n } => cmd_bracket(file, a, b, *n),
        Command::Hom { file, morphism } => cmd_hom(file, morphism),
        Command::Loop { file, auto, order, window } => cmd_loop(file, auto, *order, window),
        Command::Alg { file, auto, order, bracket } => cmd_alg(file, auto, *order, bracket),
        Command::ClassifyN4 { matrix, conductor } => cmd_classify(matrix, *conductor),
        Command::Pgl2Classes { n, conductor } => cmd_pgl2(*n, *conductor),
        Command::Centroid { file, auto, order, window, interior } => {
            cmd_centroid(file, auto, *order, window, interior)
        }
    }
}

fn emit(json_mode: bool, value: &Value, text: &str) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
    } else {
        print!("{text}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stderr().is_terminal();
    match run(&cli.command) {
        Ok((value, text)) => {
            emit(cli.json, &value, &text);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(value, text)) => {
            emit(cli.json, &value, &text);
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            if cli.json {
                let value = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
                emit(true, &value, "");
            } else if color {
                eprintln!("\x1b[31merror\x1b[0m: {e}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
