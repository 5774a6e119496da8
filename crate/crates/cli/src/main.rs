mod expr;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use lthompson::complexes::{
    complete_join_report, connectivity_of, dlink_complex, homology, matching_complex, SimplicialComplex,
    DEFAULT_ENUM_CAP,
};
use lthompson::diagrams::{BitWord, EventuallyPeriodicWord};
use lthompson::germs::{germ_compare, label_at, lsupp_approx, perp, transitivity_witness, GermComparison, Perp};
use lthompson::io::{complex_from_json, complex_to_json, homology_to_json, ContextSpec, ElementFile};
use lthompson::perfection::{commutator_witness, decompose};
use lthompson::splinter::{Splinter, SplinterPoint};
use lthompson::vphi::{Context, GroupoidElement, VPhiElement, DEFAULT_IMAGE_BUDGET};
use lthompson::Error;

/// Environment variable overriding the enumeration cap for descending links.
const CAP_VAR: &str = "LTHOMPSON_ENUM_CAP";

#[derive(Parser)]
#[command(name = "lthompson", version, about = "Compute in labeled Thompson groups V_φ(G)")]
struct Cli {
    /// Group and recursion file (JSON). Defaults to Thompson's V.
    #[arg(long, global = true)]
    context: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Product of one or more elements, left to right.
    Mul { exprs: Vec<String> },
    /// Inverse element.
    Inv { expr: String },
    /// Canonical reduced form.
    Reduce { expr: String },
    /// Whether two elements are equal.
    Eq { a: String, b: String },
    /// Whether an element is the identity.
    IsId { expr: String },
    /// Image of an eventually periodic point.
    Act {
        expr: String,
        #[arg(long)]
        point: String,
        /// Print this many letters instead of the exact image.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Label on the cone below a word.
    Label {
        expr: String,
        #[arg(long)]
        at: String,
    },
    /// Cones of the given depth not certified outside the labeled support.
    Lsupp {
        expr: String,
        #[arg(long)]
        depth: usize,
    },
    /// Write an element as two commutators times a label-free tail.
    Decompose { expr: String },
    /// Commutator witness for an element with trivial first label.
    WitnessCommutator { expr: String },
    /// Compare the reduction engine with the permutation model.
    SplinterCheck(SplinterArgs),
    /// Compare germs at the basepoint, test transversality or find a transitivity witness.
    Germ(GermArgs),
    /// Build matching complexes or descending links.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Reduced integer homology of a complex file (`-` for stdin).
    Homology {
        file: String,
        #[arg(long)]
        up_to: usize,
    },
    /// Injectivization tower of the context recursion.
    Injectivize,
}

#[derive(Args)]
struct SplinterArgs {
    a: String,
    b: Option<String>,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 10)]
    depth: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["compare", "perp", "witness"])))]
struct GermArgs {
    /// Compare the germs of two elements at 000….
    #[arg(long)]
    compare: bool,
    /// Whether two elements send 000… to different points.
    #[arg(long)]
    perp: bool,
    /// Find γ with B_i·γ germ-equivalent to A_i; the first half of the
    /// elements is A, the second half B.
    #[arg(long)]
    witness: bool,
    exprs: Vec<String>,
    #[arg(long, default_value_t = 64)]
    budget: usize,
}

#[derive(Subcommand)]
enum ComplexCommand {
    Matching {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Descending link E_n(G, φ).
    Dlink {
        #[arg(short)]
        n: usize,
        /// Group and recursion file; overrides --context.
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Verify the complete join over M_n and the connectivity bound.
        #[arg(long)]
        check: bool,
    },
}

/// Everything that ends a command early.
enum Failure {
    /// A checked claim turned out false.
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotCertified(m) => Failure::Verification(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

struct Env {
    ctx: Context,
    spec: Option<ContextSpec>,
    json: bool,
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
    }
}

fn load_context(path: Option<&Path>) -> Result<(Context, Option<ContextSpec>), Failure> {
    match path {
        None => Ok((Context::trivial(), None)),
        Some(p) => {
            let spec = ContextSpec::parse(&read_input(&p.to_string_lossy())?)?;
            Ok((spec.build()?, Some(spec)))
        }
    }
}

fn enum_cap() -> Result<u128, Failure> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{CAP_VAR} must be a positive integer"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

impl Env {
    fn groupoid(&self, text: &str) -> Result<GroupoidElement, Failure> {
        let e = expr::parse_expression(text)?;
        Ok(expr::evaluate(&e, &self.ctx, Path::new("."))?)
    }

    fn element(&self, text: &str) -> Result<VPhiElement, Failure> {
        Ok(VPhiElement::from_groupoid(self.groupoid(text)?)?)
    }

    fn element_json(&self, x: &GroupoidElement) -> Value {
        serde_json::to_value(ElementFile::from_element(x, self.spec.clone())).expect("plain data")
    }

    /// Prints an element as its reduced diagram or as an element file.
    fn show(&self, x: &GroupoidElement) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&self.element_json(x)).expect("plain data"));
        } else {
            println!("{}", x.render());
        }
    }

    fn report(&self, text: String, value: Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).expect("plain data"));
        } else {
            println!("{text}");
        }
    }
}

fn write_complex(c: &SimplicialComplex, out: Option<&Path>, env: &Env, summary: String) -> Result<(), Failure> {
    let value = complex_to_json(c);
    let text = serde_json::to_string_pretty(&value).expect("plain data");
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
            env.report(summary, json!({ "written": p, "f_vector": c.f_vector() }));
        }
        None if env.json => println!("{text}"),
        None => println!("{summary}"),
    }
    Ok(())
}

fn homology_text(h: &lthompson::BigHomology) -> String {
    (0..=h.up_to)
        .map(|k| {
            let mut parts = Vec::new();
            match h.betti[k] {
                0 => {}
                1 => parts.push("Z".to_string()),
                b => parts.push(format!("Z^{b}")),
            }
            parts.extend(h.torsion[k].iter().map(|d| format!("Z/{d}")));
            let group = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
            format!("H~{k} = {group}")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: Cli) -> Outcome {
    let (ctx, spec) = load_context(cli.context.as_deref())?;
    let env = Env { ctx, spec, json: cli.json };
    match cli.command {
        Command::Mul { exprs } => {
            let Some((first, rest)) = exprs.split_first() else {
                return Err(Failure::Usage("mul needs at least one element".into()));
            };
            let mut acc = env.groupoid(first)?;
            for e in rest {
                acc = acc.mul(&env.groupoid(e)?)?;
            }
            env.show(&acc);
            Ok(true)
        }
        Command::Inv { expr } => {
            env.show(&env.groupoid(&expr)?.inv()?);
            Ok(true)
        }
        Command::Reduce { expr } => {
            env.show(&env.groupoid(&expr)?);
            Ok(true)
        }
        Command::Eq { a, b } => {
            let equal = env.groupoid(&a)? == env.groupoid(&b)?;
            env.report(format!("equal: {equal}"), json!({ "equal": equal }));
            Ok(equal)
        }
        Command::IsId { expr } => {
            let x = env.groupoid(&expr)?;
            let id = x.is_identity();
            env.report(format!("identity: {id}"), json!({ "identity": id }));
            Ok(id)
        }
        Command::Act { expr, point, depth } => {
            let x = env.element(&expr)?;
            let w: EventuallyPeriodicWord = point.parse()?;
            match depth {
                Some(d) => {
                    let img = x.act_point(&w, d)?;
                    env.report(img.to_string(), json!({ "point": point, "depth": d, "image": img.to_string() }));
                }
                None => {
                    let img = x
                        .image_point(&w, DEFAULT_IMAGE_BUDGET)?
                        .ok_or_else(|| Failure::Verification("no repeat found within the budget".into()))?;
                    env.report(img.to_string(), json!({ "point": point, "image": img.to_string() }));
                }
            }
            Ok(true)
        }
        Command::Label { expr, at } => {
            let x = env.element(&expr)?;
            let u: BitWord = at.parse()?;
            let g = env.ctx.format_label(&label_at(&x, &u)?);
            env.report(g.clone(), json!({ "at": u.to_string(), "label": g }));
            Ok(true)
        }
        Command::Lsupp { expr, depth } => {
            let x = env.element(&expr)?;
            let s = lsupp_approx(&x, depth)?;
            let cones: Vec<String> = s.included.iter().map(|u| u.to_string()).collect();
            env.report(cones.join(" "), json!({ "depth": depth, "cones": cones }));
            Ok(true)
        }
        Command::Decompose { expr } => {
            let x = env.element(&expr)?;
            let cert = decompose(&x)?;
            let ok = cert.verify()?;
            let factors: Vec<Value> = cert
                .factors
                .iter()
                .map(|(p, q)| json!({ "p": env.element_json(p.as_groupoid()), "q": env.element_json(q.as_groupoid()) }))
                .collect();
            let mut text: Vec<String> = cert
                .factors
                .iter()
                .enumerate()
                .map(|(i, (p, q))| format!("p{}: {}\nq{}: {}", i + 1, p.render(), i + 1, q.render()))
                .collect();
            text.push(format!("tail: {}", cert.tail.render()));
            text.push(format!("verified: {ok}"));
            env.report(
                text.join("\n"),
                json!({ "factors": factors, "tail": env.element_json(cert.tail.as_groupoid()), "verified": ok }),
            );
            Ok(ok)
        }
        Command::WitnessCommutator { expr } => {
            let v = env.element(&expr)?;
            let (p, q) = commutator_witness(&v)?;
            let ok = p.commutator(&q)? == v;
            env.report(
                format!("p: {}\nq: {}\nverified: {ok}", p.render(), q.render()),
                json!({ "p": env.element_json(p.as_groupoid()), "q": env.element_json(q.as_groupoid()), "verified": ok }),
            );
            Ok(ok)
        }
        Command::SplinterCheck(args) => {
            let sp = Splinter::regular(&env.ctx)?;
            let a = env.element(&args.a)?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let faithful_depth = a.depth().max(1);
            let fixes_all = sp.check_faithful(&a, faithful_depth)?;
            let faithful = fixes_all == a.is_identity();
            let composition = match &args.b {
                Some(b) => Some(sp.check_hom(&a, &env.element(b)?, args.samples, args.depth.max(a.depth()), &mut rng)?),
                None => None,
            };
            let sample = SplinterPoint::new(0, BitWord::repeat(false, args.depth.max(a.depth())));
            let image = sp.act(&a, &sample)?;
            let ok = faithful && composition.unwrap_or(true);
            let mut text = vec![format!("faithful: {faithful}")];
            if let Some(c) = composition {
                text.push(format!("composition: {c}"));
            }
            env.report(
                text.join("\n"),
                json!({
                    "faithful": faithful,
                    "composition": composition,
                    "sample": { "point": { "x": sample.x, "w": sample.w.to_string() },
                                "image": { "x": image.x, "w": image.w.to_string() } },
                }),
            );
            Ok(ok)
        }
        Command::Germ(args) => {
            let xs = args.exprs.iter().map(|e| env.element(e)).collect::<Result<Vec<_>, _>>()?;
            if args.witness {
                if xs.is_empty() || xs.len() % 2 != 0 {
                    return Err(Failure::Usage("--witness needs A₁…A_k followed by B₁…B_k".into()));
                }
                let (a, b) = xs.split_at(xs.len() / 2);
                let gamma = transitivity_witness(a, b, args.budget)?;
                let mut ok = true;
                for (x, y) in a.iter().zip(b) {
                    ok &= matches!(germ_compare(&y.mul(&gamma)?, x, args.budget)?, GermComparison::Equivalent(_));
                }
                env.report(
                    format!("gamma: {}\nverified: {ok}", gamma.render()),
                    json!({ "gamma": env.element_json(gamma.as_groupoid()), "verified": ok }),
                );
                return Ok(ok);
            }
            let [a, b] = &xs[..] else {
                return Err(Failure::Usage("expected exactly two elements".into()));
            };
            if args.compare {
                let r = germ_compare(a, b, args.budget)?;
                let (text, value) = match r {
                    GermComparison::Equivalent(d) => (format!("equivalent at depth {d}"), json!({ "equivalent": true, "depth": d })),
                    GermComparison::Distinct(d) => (format!("distinct from depth {d}"), json!({ "equivalent": false, "depth": d })),
                    GermComparison::Unknown => ("unknown within budget".into(), json!({ "equivalent": null })),
                };
                env.report(text, value);
                Ok(matches!(r, GermComparison::Equivalent(_)))
            } else {
                let r = perp(a, b, args.budget)?;
                let (text, value) = match r {
                    Perp::Transverse(i) => (format!("transverse: differ at letter {i}"), json!({ "transverse": true, "letter": i })),
                    Perp::NotTransverse => ("not transverse".into(), json!({ "transverse": false })),
                    Perp::Unknown => ("unknown within budget".into(), json!({ "transverse": null })),
                };
                env.report(text, value);
                Ok(matches!(r, Perp::Transverse(_)))
            }
        }
        Command::Complex(ComplexCommand::Matching { n, out }) => {
            let m = matching_complex(n)?;
            write_complex(&m, out.as_deref(), &env, format!("M_{n}: f-vector {:?}", m.f_vector()))?;
            Ok(true)
        }
        Command::Complex(ComplexCommand::Dlink { n, group, out, check }) => {
            let ctx = match &group {
                Some(p) => load_context(Some(p))?.0,
                None => env.ctx.clone(),
            };
            let d = dlink_complex(n, &ctx, enum_cap()?)?;
            let c = d.complex();
            write_complex(c, out.as_deref(), &env, format!("E_{n}: f-vector {:?}", c.f_vector()))?;
            if !check {
                return Ok(true);
            }
            let join = complete_join_report(&d)?;
            let conn = connectivity_of(c, n);
            env.report(
                format!("complete join: {}\n{conn}", join.holds()),
                json!({
                    "complete_join": join.holds(),
                    "simplicial_surjective": join.simplicial_surjective,
                    "injective_on_simplices": join.injective_on_simplices,
                    "fiber_join": join.fiber_join,
                    "bound": conn.bound,
                    "homology_vanishes": conn.holds,
                }),
            );
            Ok(join.holds() && conn.holds)
        }
        Command::Homology { file, up_to } => {
            let v: Value = serde_json::from_str(&read_input(&file)?)
                .map_err(|e| Failure::Usage(format!("complex file: {e}")))?;
            let c = complex_from_json(&v)?;
            let h = homology(&c, up_to);
            if let Some(false) = h.euler_consistent() {
                return Err(Failure::Verification("Euler characteristic mismatch".into()));
            }
            env.report(homology_text(&h), homology_to_json(&h));
            Ok(true)
        }
        Command::Injectivize => {
            let (steps, tower) = match env.ctx.injectivized() {
                Some(q) => (q.steps(), q.tower_orders().to_vec()),
                None => (0, env.ctx.source_backend().order().map(|o| vec![o as usize]).unwrap_or_default()),
            };
            env.report(
                format!("steps: {steps}\ntower: {tower:?}"),
                json!({ "steps": steps, "tower": tower }),
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
