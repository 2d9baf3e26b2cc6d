//! JSON command-line front end for the valuation library.
//!
//! Every command reads exact data (rational strings, coefficient arrays,
//! chain files), prints one line of JSON on success, and reports failures
//! through the exit code: 2 for parse errors, 3 for domain errors, 4 for
//! internal errors.

mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use maclane::chain::MLVChain;
use maclane::exactnum::{RationalPoly, Value};
use maclane::extend::extensions;
use maclane::keypoly;
use maclane::limitfam::{classify, Classification, ContinuousFamily, DEFAULT_STABILITY_BUDGET};
use maclane::valuation::InductiveValuation;
use serde::Serialize;

use input::value_str;

const SYNTAX_HELP: &str = "\
POLYNOMIALS:
    A polynomial argument is a JSON array of rational-string coefficients in
    ascending degree, e.g. [\"-7\",\"0\",\"1\"], or an expression in x:

        expr     := [sign] term { (\"+\" | \"-\") term }
        term     := factor { [\"*\"] factor }      juxtaposition multiplies
        factor   := atom [ \"^\" exponent ]
        atom     := rational | \"x\" | \"(\" expr \")\"
        rational := integer [ \"/\" integer ]

    Examples: \"x^2-7\", \"2x^2+1\", \"(x+1)^2 - 1/2\".  An argument of the
    form @path reads the polynomial from a file.

CHAIN FILES:
    --chain names a JSON file:

        {\"p\": 7,
         \"base\": {\"a\": \"0\", \"gamma\": \"1/2\"},
         \"steps\": [{\"kind\": \"ordinary\", \"phi\": [\"-7\",\"0\",\"1\"],
                      \"gamma\": \"inf\"}]}

    Values are rational strings or \"inf\".  A step of kind \"limit\" carries
    a \"family\": {\"theta\": \"-1/6\"} for the digit family of a rational
    number, or {\"theta\": \"sqrt\", \"of\": \"2\", \"root\": 3} for a
    square-root family; the root defaults to the smallest one modulo p.

EXIT CODES:
    0 success, 2 parse error, 3 domain error, 4 internal error.
";

#[derive(Parser)]
#[command(name = "maclane", version, about = "Exact valuations on Q[x] over the p-adics")]
#[command(after_long_help = SYNTAX_HELP)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a polynomial under the chain's valuation
    Eval {
        /// Chain file (see --help for the schema)
        #[arg(long)]
        chain: PathBuf,
        /// Polynomial: coefficient array, expression, or @file
        #[arg(long)]
        poly: String,
    },
    /// Splitting data of the extensions cut out by a monic squarefree polynomial
    Extend {
        /// Polynomial: coefficient array, expression, or @file
        #[arg(long)]
        poly: String,
        /// The prime of the base valuation
        #[arg(long)]
        p: u64,
        /// Seed for randomized residue-field factorization
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Node degrees, ramification, residual degrees, and defect of a chain
    ChainInvariants {
        #[arg(long)]
        chain: PathBuf,
    },
    /// Generators and relations of the graded algebra of a chain
    Graded {
        #[arg(long)]
        chain: PathBuf,
    },
    /// Whether a polynomial is a key polynomial for the chain
    IsKey {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Residual polynomial data of a polynomial along the chain
    Residual {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Classify a digit family and print the limit chain when essential
    LimitDemo {
        /// JSON like {"p":7,"theta":"sqrt","of":"2"} or {"theta":"-1/6"}; p defaults to 7
        #[arg(long)]
        input: String,
    },
}

pub enum Failure {
    Parse(String),
    Domain(maclane::Error),
    Internal(String),
}

impl From<maclane::Error> for Failure {
    fn from(e: maclane::Error) -> Failure {
        match e {
            maclane::Error::Internal(m) => Failure::Internal(m),
            other => Failure::Domain(other),
        }
    }
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Parse(m) => {
                eprintln!("parse error: {}", m);
                ExitCode::from(2)
            }
            Failure::Domain(e) => {
                eprintln!("domain error: {}: {}", variant_name(&e), e);
                ExitCode::from(3)
            }
            Failure::Internal(m) => {
                eprintln!("internal error: {}", m);
                ExitCode::from(4)
            }
        }
    }
}

fn variant_name(e: &maclane::Error) -> &'static str {
    use maclane::Error::*;
    match e {
        NotMonic => "NotMonic",
        NotPrime(_) => "NotPrime",
        ZeroPolynomial => "ZeroPolynomial",
        NotNested(_) => "NotNested",
        NotIrreducible => "NotIrreducible",
        PsiIsY => "PsiIsY",
        NotResiduallyTranscendental => "NotResiduallyTranscendental",
        LimitStepPresent => "LimitStepPresent",
        UnstableCoefficient(_) => "UnstableCoefficient",
        BudgetExhausted { .. } => "BudgetExhausted",
        MlvViolation { .. } => "MlvViolation",
        SupportRequired => "SupportRequired",
        NotSquarefree => "NotSquarefree",
        NonIntegralCoefficients => "NonIntegralCoefficients",
        DepthCapExceeded(_) => "DepthCapExceeded",
        InvalidTheta(_) => "InvalidTheta",
        Internal(_) => "Internal",
    }
}

#[derive(Serialize)]
struct EvalOut {
    value: String,
}

#[derive(Serialize)]
struct LeafOut {
    e: u64,
    f: u64,
    slopes: Vec<String>,
    terminal: String,
}

#[derive(Serialize)]
struct ExtendOut {
    p: u64,
    degree: usize,
    leaves: Vec<LeafOut>,
    sum_ef: u64,
}

#[derive(Serialize)]
struct LedgerOut {
    e: u64,
    f: u64,
    d: String,
}

#[derive(Serialize)]
struct InvariantsOut {
    m: Vec<usize>,
    e: Vec<u64>,
    f: Vec<usize>,
    d: Vec<String>,
    defect_ledger: Option<LedgerOut>,
}

#[derive(Serialize)]
struct GeneratorOut {
    name: String,
    value: String,
}

#[derive(Serialize)]
struct RelationOut {
    node: usize,
    power: u64,
    text: String,
    unit: String,
    root: String,
    min_poly: String,
}

#[derive(Serialize)]
struct GradedOut {
    prime: u64,
    generators: Vec<GeneratorOut>,
    relations: Vec<RelationOut>,
    kappa_tower: Vec<String>,
    kappa_degrees: Vec<usize>,
    transcendental: Option<GeneratorOut>,
}

#[derive(Serialize)]
struct IsKeyOut {
    is_key: bool,
}

#[derive(Serialize)]
struct ResidualOut {
    value: String,
    s0: usize,
    poly: String,
    leading_unit: String,
}

#[derive(Serialize)]
struct BaseOut {
    a: String,
    gamma: String,
}

#[derive(Serialize)]
struct StepOut {
    kind: String,
    phi: Vec<String>,
    gamma: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<input::FamilySpec>,
}

#[derive(Serialize)]
struct ChainOut {
    p: u64,
    base: BaseOut,
    steps: Vec<StepOut>,
}

#[derive(Serialize)]
#[serde(tag = "classification", rename_all = "lowercase")]
enum DemoOut {
    Inessential { witness: String },
    Essential { phi: String, chain: ChainOut },
    Undetermined,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(line)) => {
            println!("{}", line);
            ExitCode::SUCCESS
        }
        Ok(Err(failure)) => failure.report(),
        Err(_) => {
            eprintln!("internal error: unexpected panic");
            ExitCode::from(4)
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.cmd {
        Cmd::Eval { chain, poly } => {
            let chain = load_chain(&chain)?;
            let f = input::parse_poly_arg(&poly).map_err(Failure::Parse)?;
            let v = chain.valuation().eval(&f)?;
            to_json(&EvalOut {
                value: value_str(&v),
            })
        }
        Cmd::Extend { poly, p, seed } => {
            let f = input::parse_poly_arg(&poly).map_err(Failure::Parse)?;
            let report = extensions(&f, p, seed)?;
            let leaves: Vec<LeafOut> = report
                .leaves
                .iter()
                .map(|l| LeafOut {
                    e: l.e,
                    f: l.f,
                    slopes: l.slope_history.iter().map(ToString::to_string).collect(),
                    terminal: l.terminal.to_string(),
                })
                .collect();
            let sum_ef = report.leaves.iter().map(|l| l.local_degree()).sum();
            to_json(&ExtendOut {
                p: report.p,
                degree: report.degree,
                leaves,
                sum_ef,
            })
        }
        Cmd::ChainInvariants { chain } => {
            let chain = load_chain(&chain)?;
            let inv = chain.invariants()?;
            let defect_ledger = match chain.defect_ledger() {
                Ok(l) => Some(LedgerOut {
                    e: l.e,
                    f: l.f,
                    d: l.d.to_string(),
                }),
                Err(maclane::Error::SupportRequired) => None,
                Err(e) => return Err(e.into()),
            };
            to_json(&InvariantsOut {
                m: inv.m,
                e: inv.e,
                f: inv.f,
                d: inv.d.iter().map(ToString::to_string).collect(),
                defect_ledger,
            })
        }
        Cmd::Graded { chain } => {
            let chain = load_chain(&chain)?;
            let g = chain.graded_presentation()?;
            let relations = g
                .relations
                .iter()
                .map(|r| {
                    let gen = g.generators[r.node].0.as_str();
                    let lhs = if r.power == 1 {
                        gen.to_string()
                    } else {
                        format!("{}^{}", gen, r.power)
                    };
                    RelationOut {
                        node: r.node,
                        power: r.power,
                        text: format!("{} = u_{}*z_{}", lhs, r.node, r.node),
                        unit: r.unit.clone(),
                        root: r.root.clone(),
                        min_poly: r.min_poly.clone(),
                    }
                })
                .collect();
            to_json(&GradedOut {
                prime: g.prime,
                generators: g.generators.iter().map(generator_out).collect(),
                relations,
                kappa_tower: g.kappa_tower,
                kappa_degrees: g.kappa_degrees,
                transcendental: g.transcendental.as_ref().map(generator_out),
            })
        }
        Cmd::IsKey { chain, poly } => {
            let chain = load_chain(&chain)?;
            let f = input::parse_poly_arg(&poly).map_err(Failure::Parse)?;
            to_json(&IsKeyOut {
                is_key: keypoly::is_key(chain.valuation(), &f)?,
            })
        }
        Cmd::Residual { chain, poly } => {
            let chain = load_chain(&chain)?;
            let f = input::parse_poly_arg(&poly).map_err(Failure::Parse)?;
            let rd = keypoly::residual(chain.valuation(), &f)?;
            to_json(&ResidualOut {
                value: value_str(&rd.value),
                s0: rd.s0,
                poly: rd.poly.to_string(),
                leading_unit: rd.leading_unit.to_string(),
            })
        }
        Cmd::LimitDemo { input: raw } => limit_demo(&raw),
    }
}

fn limit_demo(raw: &str) -> Result<String, Failure> {
    let text = input::read_arg(raw).map_err(Failure::Parse)?;
    let demo = input::parse_demo_input(&text)?;
    let base = InductiveValuation::gauss(demo.p)?;
    let fam = ContinuousFamily::new(base.clone(), demo.stream.clone());
    let candidates = match &demo.kind {
        input::DemoKind::Sqrt { of } => vec![
            RationalPoly::x(),
            &RationalPoly::x().pow(2) - &RationalPoly::constant(of.clone()),
        ],
        input::DemoKind::Rational { theta } => {
            vec![RationalPoly::x(), RationalPoly::x_minus(theta)]
        }
    };
    match classify(&fam, &candidates, DEFAULT_STABILITY_BUDGET)? {
        Classification::Inessential { witness } => to_json(&DemoOut::Inessential {
            witness: witness.to_string(),
        }),
        Classification::EssentialWith { phi } => {
            let mu = base.augment_limit(demo.stream, phi.clone(), Value::Infinity)?;
            let chain = MLVChain::validate(&mu)?;
            to_json(&DemoOut::Essential {
                phi: phi.to_string(),
                chain: chain_out(chain.valuation(), &demo.spec),
            })
        }
        Classification::Undetermined => to_json(&DemoOut::Undetermined),
    }
}

fn chain_out(mu: &InductiveValuation, family: &input::FamilySpec) -> ChainOut {
    let a = -mu.key_at(0).coeff(0);
    ChainOut {
        p: mu.base().prime(),
        base: BaseOut {
            a: a.to_string(),
            gamma: value_str(mu.gamma_at(0)),
        },
        steps: mu
            .steps()
            .iter()
            .map(|s| StepOut {
                kind: if s.is_limit() { "limit" } else { "ordinary" }.into(),
                phi: input::poly_coeff_strings(&s.phi),
                gamma: value_str(&s.gamma),
                family: s.is_limit().then(|| family.clone()),
            })
            .collect(),
    }
}

fn generator_out(g: &(String, Value)) -> GeneratorOut {
    GeneratorOut {
        name: g.0.clone(),
        value: value_str(&g.1),
    }
}

fn load_chain(path: &PathBuf) -> Result<MLVChain, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {}", path.display(), e)))?;
    let mu = input::parse_chain_text(&text)?;
    MLVChain::validate(&mu).map_err(Failure::from)
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure::Internal(format!("serialization: {}", e)))
}
