use std::process::ExitCode;

use akzeta::classical::{poly_bernoulli_b, poly_bernoulli_c};
use akzeta::exact::{GaussianRational, PolyYW, Var};
use akzeta::gl2::{bigen_series, unigen_series, YSpec};
use akzeta::harness::{run_catalog, to_csv, to_json, CatalogConfig};
use akzeta::moebius::{check_def_cond, domain_report, Matrix2, Params, Symbol};
use akzeta::numeric::{xi_d, QuadratureConfig, ZetaMethod};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "akzeta", version, about = "Poly-Bernoulli polynomials and zeta-functions attached to 2x2 matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Admissibility, vertices, cusps and convergence region of a matrix.
    Classify {
        /// Matrix as "a,b;c,d" with Gaussian-rational entries.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Matrix2,
    },
    /// Exact values.
    Compute {
        #[command(subcommand)]
        what: Compute,
    },
    /// Numeric value of xi_D(u,s;y,w;g) with its error estimate.
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        matrix: Matrix2,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        u: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        s: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        y: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        w: Complex64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Run the identity catalog; exits 0 iff every selected case passes.
    Verify {
        /// Case id, or an id prefix ending at a `-` boundary.
        #[arg(long)]
        case: Option<String>,
        /// Restrict the matrix-generic families to these matrices (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        matrix: Vec<Matrix2>,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Skip the numeric suite.
        #[arg(long)]
        exact_only: bool,
    },
}

#[derive(Subcommand)]
enum Compute {
    /// Poly-Bernoulli number B_n^(k) or C_n^(k).
    Classical {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Poly-Bernoulli polynomial B_m^(u)(y,w;g), optionally at given y and w.
    Gl2 {
        #[arg(long, allow_hyphen_values = true)]
        matrix: Matrix2,
        #[arg(long, allow_hyphen_values = true)]
        u: i64,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<GaussianRational>,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<GaussianRational>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Integral,
    Hankel,
    Circle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Accepts `1.5`, `-2i`, `i`, `0.5-1.25i`, `1e-3+2i`.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("not a complex number: {s:?}");
    let real = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let imag = |x: &str| match x {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(x.trim_end_matches('*')),
    };
    let Some(body) = t.strip_suffix('i') else {
        return real(&t).map(|re| Complex64::new(re, 0.0)).and_then(|z| if z.re.is_finite() { Ok(z) } else { Err(bad()) });
    };
    // Split at the last sign that is not the leading one or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let z = match split {
        Some(j) => Complex64::new(real(&body[..j])?, imag(&body[j..])?),
        None => Complex64::new(0.0, imag(body)?),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    // Debug keeps the shortest round-tripping digits but switches to
    // exponent notation for very small or large magnitudes.
    format!("{:?}{}{:?}i", z.re, sign, z.im.abs())
}

fn int_json(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

fn rational_json(q: &BigRational) -> Value {
    json!({ "num": int_json(q.numer()), "den": int_json(q.denom()) })
}

fn poly_json(p: &PolyYW) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(&(dy, dw), c)| json!({ "y": dy, "w": dw, "re": rational_json(&c.re), "im": rational_json(&c.im) }))
        .collect();
    Value::Array(terms)
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn print_json(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize")));
}

fn classify(g: &Matrix2) -> akzeta::Result<()> {
    let adm = check_def_cond(g);
    let domain = if adm.admissible { Some(domain_report(g)?) } else { None };
    let vertices = domain.as_ref().map_or(&[][..], |d| &d.vertices[..]);
    let name = |s: &Symbol| json!(s).as_str().unwrap_or_default().to_owned();
    let cusps: Vec<Value> = vertices.iter().filter(|v| v.cusp).map(|v| json!(v.vertex)).collect();
    let constraints: Vec<String> =
        vertices.iter().map(|v| format!("{} + {} = {}", name(&v.mu), name(&v.nu), v.sum)).collect();
    print_json(&json!({
        "matrix": g.to_string(),
        "admissible": adm.admissible,
        "witness": adm.witness,
        "cusps": cusps,
        "constraints": constraints,
        "domain": domain,
    }));
    Ok(())
}

fn classical(kind: Kind, k: i64, n: usize, as_json: bool) -> akzeta::Result<()> {
    let seq = match kind {
        Kind::B => poly_bernoulli_b(n, k),
        Kind::C => poly_bernoulli_c(n, k),
    };
    let v = &seq[n];
    if as_json {
        let name = match kind {
            Kind::B => "B",
            Kind::C => "C",
        };
        print_json(&json!({ "kind": name, "k": k, "n": n, "value": v.to_string(), "exact": rational_json(v) }));
    } else {
        emit(&format!("{v}\n"));
    }
    Ok(())
}

fn gl2(
    g: &Matrix2,
    u: i64,
    m: usize,
    y: Option<&GaussianRational>,
    w: Option<&GaussianRational>,
    as_json: bool,
) -> akzeta::Result<()> {
    let mut p = if u <= 0 {
        let l = (-u) as usize;
        bigen_series(g, m, l)?.get(m, l).clone()
    } else {
        let y = y.ok_or_else(|| akzeta::Error::Unsupported("a positive order u needs --y".into()))?;
        unigen_series(g, u, &YSpec::Value(y.clone()), m)?.swap_remove(m)
    };
    if let Some(y) = y {
        p = p.eval_var(Var::Y, y);
    }
    if let Some(w) = w {
        p = p.eval_var(Var::W, w);
    }
    if as_json {
        print_json(&json!({
            "matrix": g.to_string(),
            "u": u,
            "m": m,
            "y": y.map(ToString::to_string),
            "w": w.map(ToString::to_string),
            "value": p.to_string(),
            "terms": poly_json(&p),
        }));
    } else {
        emit(&format!("{p}\n"));
    }
    Ok(())
}

fn zeta(g: &Matrix2, p: Params, method: MethodArg, as_json: bool) -> akzeta::Result<()> {
    let method = match method {
        MethodArg::Auto => ZetaMethod::Auto,
        MethodArg::Integral => ZetaMethod::Integral,
        MethodArg::Hankel => ZetaMethod::Hankel,
        MethodArg::Circle => ZetaMethod::Circle,
    };
    let cfg = CatalogConfig::default().with_env()?;
    let quad: QuadratureConfig = cfg.numeric.quadrature;
    let r = xi_d(g, p, method, &quad)?;
    if as_json {
        print_json(&json!({
            "matrix": g.to_string(),
            "value": fmt_complex(r.value),
            "re": r.value.re,
            "im": r.value.im,
            "est_error": r.est_error,
            "method": r.method,
        }));
    } else {
        emit(&format!("{} ± {:e}\n", fmt_complex(r.value), r.est_error));
    }
    Ok(())
}

fn verify(
    case: Option<String>,
    matrices: Vec<Matrix2>,
    max_order: Option<usize>,
    format: Format,
    exact_only: bool,
) -> akzeta::Result<bool> {
    let cfg = CatalogConfig {
        case,
        matrices: (!matrices.is_empty()).then_some(matrices),
        max_order,
        include_numeric: !exact_only,
        ..CatalogConfig::default()
    }
    .with_env()?;
    let report = run_catalog(&cfg);
    if report.cases.is_empty() {
        return Err(akzeta::Error::InvalidArgument(format!(
            "no case matches {:?}",
            cfg.case.as_deref().unwrap_or("")
        )));
    }
    match format {
        Format::Json => emit(&format!("{}\n", to_json(&report)?)),
        Format::Csv => emit(&to_csv(&report.cases)?),
    }
    Ok(report.all_passed())
}

fn run(cli: Cli) -> akzeta::Result<bool> {
    match cli.command {
        Command::Classify { matrix } => classify(&matrix).map(|_| true),
        Command::Compute { what: Compute::Classical { kind, k, n, json } } => classical(kind, k, n, json).map(|_| true),
        Command::Compute { what: Compute::Gl2 { matrix, u, m, y, w, json } } => {
            gl2(&matrix, u, m, y.as_ref(), w.as_ref(), json).map(|_| true)
        }
        Command::Zeta { matrix, u, s, y, w, method, json } => {
            zeta(&matrix, Params::new(u, s, y, w), method, json).map(|_| true)
        }
        Command::Verify { case, matrix, max_order, format, exact_only } => {
            verify(case, matrix, max_order, format, exact_only)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("1.5").unwrap(), c(1.5, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("0.5-1.25i").unwrap(), c(0.5, -1.25));
        assert_eq!(parse_complex("1e-3+2e+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex("-1 + i").unwrap(), c(-1.0, 1.0));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("nan").is_err());
    }

    #[test]
    fn complex_output_round_trips() {
        for z in [Complex64::new(2.5, -0.1), Complex64::new(-1e-20, 3.0), Complex64::new(0.1, 0.0)] {
            assert_eq!(parse_complex(&fmt_complex(z)).unwrap(), z);
        }
    }
}
