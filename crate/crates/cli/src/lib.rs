//! Command dispatch for the `parasurf` binary. [`run`] writes to the given
//! streams and returns the process exit status, so it is testable in
//! process.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use parasurf::curve::{analyze_curve, CurveComponent, CurveOptions, PlaneCurve};
use parasurf::factor::factor;
use parasurf::obstruction::{analyze, AnalysisOptions, SurfaceInput};
use parasurf::parse::parse_polynomial;
use parasurf::veronese::{
    build_parametrization, verify_parametrization, ParametrizationRecord, VerificationRecord,
    VeroneseSpec, CURVE_VARS,
};
use parasurf::{Error, MultiPoly};

pub mod corpus;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const SURFACE_VARS: [&str; 3] = ["x", "y", "z"];
const FACTOR_VARS: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Debug, Parser)]
#[command(name = "parasurf", version, about = "Obstructions to surjective birational parametrizations of affine surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for verification sampling.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Number of verification samples.
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,

    /// Maximum depth of quadratic transforms per singular point.
    #[arg(long, global = true, default_value_t = 24)]
    pub max_blowups: usize,

    /// Assume the surface is rational (default).
    #[arg(long, global = true, overrides_with = "no_assert_rational")]
    pub assert_rational: bool,

    /// Do not assume the surface is rational.
    #[arg(long, global = true)]
    pub no_assert_rational: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            json: false,
            seed: 1,
            samples: 100,
            max_blowups: 24,
            assert_rational: false,
            no_assert_rational: false,
        }
    }
}

impl Flags {
    pub fn asserted_rational(&self) -> bool {
        !self.no_assert_rational
    }

    fn curve_options(&self) -> CurveOptions {
        CurveOptions {
            max_blowups: self.max_blowups,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Polynomial text.
    pub poly: Option<String>,

    /// Read the polynomial from a UTF-8 file instead.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decide whether surjective birational parametrizations are ruled out.
    Analyze(Input),
    /// Genus of a plane projective curve given by a form in x, y, z.
    Genus(Input),
    /// Factor a polynomial in x, y, z, w over Q.
    Factor(Input),
    /// Build and verify a Veronese parametrization.
    Veronese {
        #[arg(long)]
        degree: u32,
        /// Form of degree d-1 in x0, x1, x2.
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Run the built-in examples and compare with the golden reports.
    Corpus {
        /// Rewrite the golden files in this directory instead of comparing.
        #[arg(long)]
        update_golden: Option<PathBuf>,
    },
}

/// Failure of a command before it produced a result.
#[derive(Debug)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

fn exit_for(f: &Failure) -> i32 {
    if f.code == "E_INTERNAL" {
        EXIT_MISMATCH
    } else {
        EXIT_INPUT
    }
}

fn read_input(poly: Option<&str>, file: Option<&Path>) -> Result<String, Failure> {
    match (poly, file) {
        (Some(p), None) => Ok(p.to_string()),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure {
                code: "E_IO",
                message: format!("cannot read {}: {e}", path.display()),
            }),
        (Some(_), Some(_)) => Err(Failure {
            code: "E_USAGE",
            message: "give the polynomial either inline or with --file, not both".into(),
        }),
        (None, None) => Err(Failure {
            code: "E_USAGE",
            message: "missing polynomial argument".into(),
        }),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Output of one command: text or JSON, and whether checks passed.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

pub fn analyze_command(text: &str, flags: &Flags) -> Result<Output, Failure> {
    let f = parse_polynomial(text, &SURFACE_VARS)?;
    let input = SurfaceInput::new(f, flags.asserted_rational())?;
    let report = analyze(
        &input,
        &AnalysisOptions {
            curve: flags.curve_options(),
        },
    )?;
    let text = if flags.json {
        to_json(&report)
    } else {
        report.to_text()
    };
    Ok(Output { text, ok: true })
}

#[derive(Serialize)]
struct GenusOutput<'a> {
    curve: String,
    degree: u32,
    components: &'a [CurveComponent],
}

pub fn genus_command(text: &str, flags: &Flags) -> Result<Output, Failure> {
    let f = parse_polynomial(text, &SURFACE_VARS)?;
    let curve = PlaneCurve::new(f)?;
    let comps = analyze_curve(&curve, &flags.curve_options())?;
    let text = if flags.json {
        to_json(&GenusOutput {
            curve: curve.form().to_string(),
            degree: curve.degree(),
            components: &comps,
        })
    } else {
        let mut s = format!("curve: {} = 0 (degree {})\n", curve.form(), curve.degree());
        for c in &comps {
            let genus = c.genus.genus.map_or("?".into(), |g| g.to_string());
            s += &format!(
                "component {} (multiplicity {}, {} absolute): genus {}, {:?}\n",
                c.factor, c.multiplicity, c.absolute_factor_count, genus, c.genus.rationality
            );
            for n in &c.genus.notes {
                s += &format!("  {n}\n");
            }
        }
        s
    };
    Ok(Output { text, ok: true })
}

#[derive(Serialize)]
struct FactorRecord {
    factor: String,
    multiplicity: u32,
}

#[derive(Serialize)]
struct FactorOutput {
    input: String,
    content: String,
    factors: Vec<FactorRecord>,
}

pub fn factor_command(text: &str, flags: &Flags) -> Result<Output, Failure> {
    let p = parse_polynomial(text, &FACTOR_VARS)?;
    let names: Vec<&str> = FACTOR_VARS.to_vec();
    let n = if p.degree_in(3).unwrap_or(0) > 0 { 4 } else { 3 };
    let p = if n == 3 { p.drop_var(3) } else { p };
    let parts = factor(&p)?;
    let product = parts
        .iter()
        .fold(MultiPoly::one(n), |acc, (f, e)| &acc * &f.pow(*e));
    let content = if p.is_zero() {
        "0".to_string()
    } else {
        (p.leading_coeff() / product.leading_coeff()).to_string()
    };
    let out = FactorOutput {
        input: p.to_text(&names),
        content,
        factors: parts
            .iter()
            .map(|(f, e)| FactorRecord {
                factor: f.to_text(&names),
                multiplicity: *e,
            })
            .collect(),
    };
    let text = if flags.json {
        to_json(&out)
    } else {
        let mut s = format!("{} =\n  {}", out.input, out.content);
        for f in &out.factors {
            s += &format!(" * ({})", f.factor);
            if f.multiplicity > 1 {
                s += &format!("^{}", f.multiplicity);
            }
        }
        s + "\n"
    };
    Ok(Output { text, ok: true })
}

#[derive(Serialize)]
struct VeroneseOutput {
    parametrization: ParametrizationRecord,
    verification: VerificationRecord,
}

pub fn veronese_command(degree: u32, curve: &str, flags: &Flags) -> Result<Output, Failure> {
    let c = parse_polynomial(curve, &CURVE_VARS)?;
    let spec = VeroneseSpec::new(degree, c)?;
    let p = build_parametrization(&spec);
    let verification = verify_parametrization(&p, &spec, flags.samples, flags.seed);
    let ok = verification.passed;
    let out = VeroneseOutput {
        parametrization: ParametrizationRecord::new(&spec, &p),
        verification,
    };
    let text = if flags.json {
        to_json(&out)
    } else {
        let r = &out.parametrization;
        let v = &out.verification;
        let mut s = format!(
            "degree {} Veronese surface in P^{}, hyperplane x0*({}) sent to infinity\n",
            r.degree, r.ambient_dimension, r.curve
        );
        s += &format!("domain: {}\n", r.affine_domain);
        for (i, n) in r.affine_numerators.iter().enumerate() {
            s += &format!("f{} = ({}) / ({})\n", i + 1, n, r.affine_denominator);
        }
        s += &format!(
            "determinant {}; denominator identity {}; {} samples injective {}; {} relations hold {}\n",
            v.determinant,
            v.denominator_identity,
            v.samples_checked,
            v.injective_on_samples,
            v.relation_count,
            v.relations_on_samples
        );
        s += if v.passed {
            "verification passed\n"
        } else {
            "verification FAILED\n"
        };
        if let Some(f) = &v.failure {
            s += &format!("failure: {f}\n");
        }
        s
    };
    Ok(Output { text, ok })
}

/// Runs one parsed invocation and returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let flags = &cli.flags;
    let result = match &cli.command {
        Command::Analyze(i) => read_input(i.poly.as_deref(), i.file.as_deref())
            .and_then(|t| analyze_command(&t, flags)),
        Command::Genus(i) => read_input(i.poly.as_deref(), i.file.as_deref())
            .and_then(|t| genus_command(&t, flags)),
        Command::Factor(i) => read_input(i.poly.as_deref(), i.file.as_deref())
            .and_then(|t| factor_command(&t, flags)),
        Command::Veronese {
            degree,
            curve,
            file,
        } => read_input(curve.as_deref(), file.as_deref())
            .and_then(|t| veronese_command(*degree, &t, flags)),
        Command::Corpus { update_golden } => corpus::run_corpus(flags, update_golden.as_deref()),
    };
    match result {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if o.ok {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error[{}]: {}", f.code, f.message);
            exit_for(&f)
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}
