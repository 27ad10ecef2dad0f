use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use alcove_core::cohomology::{h1_class, h1_group, minimal_inverted_primes, modular_formula, section_of};
use alcove_core::orientation::{
    classify_ball, same_orientation_from_vectors, same_orientation_modular, same_orientation_oracle,
    same_orientation_theorem,
};
use alcove_core::render::{render, Coloring, RenderSpec};
use alcove_core::schema::{
    AlcoveCheckDoc, ClassDoc, ComponentsDoc, ElementDoc, H1Doc, OrientDoc, RootSystemDoc, SchemaTag,
    ShiVectorDoc, VerifyDoc,
};
use alcove_core::shi::{
    enumerate_admitted, format_pyramid, lambda_of, parse_pyramid, shi_vector, DEFAULT_MAX_ADMISSIBLE,
};
use alcove_core::weyl::evaluate_word;
use alcove_core::{AffineElement, AlcoveError, CartanType, GeneratorWord, RootSystem, ShiVector};

const MAX_ADMISSIBLE_ENV: &str = "ALCOVE_SHI_MAX_ADMISSIBLE";

#[derive(Parser, Debug)]
#[command(name = "alcove-shi", version, about = "Shi coefficients and orientations of alcoves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// Cartan type, one of A B C D E F G
    #[arg(long = "type", value_name = "TYPE")]
    kind: CartanType,
    #[arg(long)]
    rank: usize,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VectorInput {
    /// Shi coefficients in canonical root order
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    /// Type-A pyramid, rows separated by newlines, `|` or `;`
    #[arg(long, allow_hyphen_values = true)]
    pyramid: Option<String>,
    /// Word in the affine generators, e.g. "0 1 2 1"
    #[arg(long)]
    word: Option<String>,
    /// Element or Shi vector as JSON text or a path to a JSON file
    #[arg(long)]
    input: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the positive roots in canonical order
    Roots(SystemArgs),
    /// Shi coefficient vector of an element
    Shi {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        word: Option<String>,
        /// Element JSON {translation, matrix} or a path to one
        #[arg(long)]
        element: Option<String>,
    },
    /// Check Shi's inequalities on a candidate vector
    IsAlcove {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        input: VectorInput,
    },
    /// Admitted vectors (components of the Shi variety)
    Components {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        input: VectorInput,
    },
    /// First cohomology H^1(W, ZPhi)
    H1(SystemArgs),
    /// Decide whether two alcoves share an orientation
    Orient {
        #[command(flatten)]
        sys: SystemArgs,
        /// First alcove: pyramid, JSON, k list or file
        #[arg(long, allow_hyphen_values = true)]
        v1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        v2: Option<String>,
        /// First alcove as a word
        #[arg(long)]
        w1: Option<String>,
        #[arg(long)]
        w2: Option<String>,
    },
    /// Cross-check the three orientation tests on every pair in a ball
    Verify {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        radius: usize,
    },
    /// Draw a ball of alcoves as SVG (rank at most 2)
    Render {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 6)]
        radius: usize,
        /// orientation, component or h1class
        #[arg(long, default_value = "orientation")]
        coloring: Coloring,
        #[arg(long)]
        labels: bool,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 800)]
        height: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<AlcoveError> for Failure {
    fn from(e: AlcoveError) -> Self {
        match e {
            AlcoveError::InvalidRootSystem { .. }
            | AlcoveError::UnknownType(_)
            | AlcoveError::Parse(_)
            | AlcoveError::BadLetter { .. }
            | AlcoveError::BadIndex { .. }
            | AlcoveError::DimensionMismatch { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<ExitCode, Failure>;

fn print_json<T: Serialize>(doc: &T) {
    println!("{}", serde_json::to_string_pretty(doc).expect("documents serialize"));
}

fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn read_maybe_file(s: &str) -> std::result::Result<String, Failure> {
    let t = s.trim();
    if !t.starts_with('{') && Path::new(t).is_file() {
        std::fs::read_to_string(t).map_err(|e| Failure::Usage(format!("cannot read {t}: {e}")))
    } else {
        Ok(s.to_string())
    }
}

fn parse_k_list(rs: &RootSystem, s: &str) -> std::result::Result<Vec<i64>, Failure> {
    let v = s
        .trim()
        .trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Failure::Usage(format!("bad coefficient `{t}`"))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if v.len() != rs.num_positive_roots() {
        return Err(AlcoveError::DimensionMismatch {
            expected: rs.num_positive_roots(),
            actual: v.len(),
        }
        .into());
    }
    Ok(v)
}

fn element_from_word(rs: &RootSystem, word: &str) -> std::result::Result<AffineElement, Failure> {
    let w: GeneratorWord = word.parse()?;
    Ok(evaluate_word(rs, &w)?)
}

/// Raw candidate entries (not yet validated) from JSON, pyramid or a plain list.
fn raw_entries(rs: &RootSystem, text: &str) -> std::result::Result<Vec<i64>, Failure> {
    let text = read_maybe_file(text)?;
    let t = text.trim();
    if t.starts_with('{') {
        let value: serde_json::Value =
            serde_json::from_str(t).map_err(|e| Failure::Usage(format!("bad JSON: {e}")))?;
        if value.get("matrix").is_some() {
            let doc: ElementDoc =
                serde_json::from_value(value).map_err(|e| Failure::Usage(format!("bad element JSON: {e}")))?;
            let w = doc.to_element(rs)?;
            return Ok(shi_vector(rs, &w).entries().to_vec());
        }
        let doc: ShiVectorDoc =
            serde_json::from_value(value).map_err(|e| Failure::Usage(format!("bad Shi vector JSON: {e}")))?;
        return Ok(doc.to_vector(rs)?.entries().to_vec());
    }
    if rs.kind() == CartanType::A && rs.rank() > 1 && (t.contains('\n') || t.contains('|') || t.contains(';')) {
        return Ok(parse_pyramid(rs, t)?);
    }
    parse_k_list(rs, t)
}

fn candidate(rs: &RootSystem, input: &VectorInput) -> std::result::Result<Vec<i64>, Failure> {
    let given = [&input.k, &input.pyramid, &input.word, &input.input]
        .iter()
        .filter(|o| o.is_some())
        .count();
    if given != 1 {
        return Err(Failure::Usage("give exactly one of --k, --pyramid, --word, --input".into()));
    }
    if let Some(k) = &input.k {
        return parse_k_list(rs, k);
    }
    if let Some(p) = &input.pyramid {
        return Ok(parse_pyramid(rs, &read_maybe_file(p)?)?);
    }
    if let Some(w) = &input.word {
        return Ok(shi_vector(rs, &element_from_word(rs, w)?).entries().to_vec());
    }
    raw_entries(rs, input.input.as_deref().expect("counted above"))
}

fn max_admissible() -> std::result::Result<u128, Failure> {
    match std::env::var(MAX_ADMISSIBLE_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{MAX_ADMISSIBLE_ENV} must be a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_MAX_ADMISSIBLE),
    }
}

fn system(sys: &SystemArgs) -> std::result::Result<RootSystem, Failure> {
    Ok(RootSystem::new(sys.kind, sys.rank)?)
}

fn localization(primes: &[u64]) -> String {
    if primes.is_empty() {
        "Z".to_string()
    } else {
        format!("Z[1/{}]", primes.iter().product::<u64>())
    }
}

fn cmd_roots(sys: &SystemArgs) -> CmdResult {
    let rs = system(sys)?;
    if sys.json {
        print_json(&RootSystemDoc::of(&rs));
        return Ok(ExitCode::SUCCESS);
    }
    println!("{} f={} |W|={}", rs.label(), rs.index_of_connection(), rs.weyl_group_order());
    println!("cartan {:?}", rs.cartan());
    for (i, r) in rs.positive_roots().iter().enumerate() {
        println!(
            "{i:>3} root {} coroot {} height {} coroot_height {} sq_norm {}",
            fmt_vec(&r.root_coords),
            fmt_vec(&r.coroot_coords),
            r.height(),
            r.coroot_height,
            r.sq_norm
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_shi(sys: &SystemArgs, word: &Option<String>, element: &Option<String>) -> CmdResult {
    let rs = system(sys)?;
    let w = match (word, element) {
        (Some(word), None) => element_from_word(&rs, word)?,
        (None, Some(e)) => {
            let text = read_maybe_file(e)?;
            let doc: ElementDoc =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad element JSON: {e}")))?;
            doc.to_element(&rs)?
        }
        _ => return Err(Failure::Usage("give exactly one of --word, --element".into())),
    };
    let v = shi_vector(&rs, &w);
    if sys.json {
        print_json(&ShiVectorDoc::of(&rs, &v));
        return Ok(ExitCode::SUCCESS);
    }
    println!("{}", fmt_vec(v.entries()));
    if let Some(p) = format_pyramid(&rs, v.entries()) {
        println!("{p}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_is_alcove(sys: &SystemArgs, input: &VectorInput) -> CmdResult {
    let rs = system(sys)?;
    let entries = candidate(&rs, input)?;
    let (alcove, reason) = match ShiVector::new(&rs, entries) {
        Ok(_) => (true, None),
        Err(e @ AlcoveError::NotAlcove { .. }) => (false, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    if sys.json {
        print_json(&AlcoveCheckDoc { schema: SchemaTag, alcove, reason });
    } else {
        println!("{alcove}");
        if let Some(r) = reason {
            eprintln!("{r}");
        }
    }
    Ok(if alcove { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_components(sys: &SystemArgs, input: &VectorInput) -> CmdResult {
    let rs = system(sys)?;
    let given = [&input.k, &input.pyramid, &input.word, &input.input]
        .iter()
        .any(|o| o.is_some());
    if given {
        let v = ShiVector::new(&rs, candidate(&rs, input)?)?;
        let lambda = lambda_of(&rs, &v);
        if sys.json {
            print_json(&ComponentsDoc::of(&rs, std::slice::from_ref(&lambda)));
        } else {
            println!("{}", fmt_vec(lambda.entries()));
        }
        return Ok(ExitCode::SUCCESS);
    }
    let all = enumerate_admitted(&rs, max_admissible()?)?;
    if sys.json {
        print_json(&ComponentsDoc::of(&rs, &all));
    } else {
        println!("{} admitted vectors", all.len());
        for a in &all {
            println!("{}", fmt_vec(a.entries()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_h1(sys: &SystemArgs) -> CmdResult {
    let rs = system(sys)?;
    if sys.json {
        print_json(&H1Doc::of(&rs));
        return Ok(ExitCode::SUCCESS);
    }
    let g = h1_group(&rs);
    let primes = minimal_inverted_primes(&rs);
    println!("invariant factors {:?}", g.invariant_factors);
    println!("order {}", g.order());
    println!("f {}", rs.index_of_connection());
    println!("trivial over {}", localization(&primes));
    if let Some(f) = modular_formula(&rs) {
        println!("{f}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_orient(
    sys: &SystemArgs,
    v1: &Option<String>,
    v2: &Option<String>,
    w1: &Option<String>,
    w2: &Option<String>,
) -> CmdResult {
    let rs = system(sys)?;
    let load = |v: &Option<String>, w: &Option<String>| -> std::result::Result<(ShiVector, Option<AffineElement>), Failure> {
        match (v, w) {
            (Some(v), None) => Ok((ShiVector::new(&rs, raw_entries(&rs, v)?)?, None)),
            (None, Some(w)) => {
                let e = element_from_word(&rs, w)?;
                Ok((shi_vector(&rs, &e), Some(e)))
            }
            _ => Err(Failure::Usage("give each alcove as exactly one of --vN or --wN".into())),
        }
    };
    let (a, ea) = load(v1, w1)?;
    let (b, eb) = load(v2, w2)?;
    let oracle = match (&ea, &eb) {
        (Some(x), Some(y)) => same_orientation_oracle(x, y),
        _ => same_orientation_from_vectors(&rs, &a, &b),
    };
    let theorem = same_orientation_theorem(&rs, &a, &b);
    let (la, lb) = (lambda_of(&rs, &a), lambda_of(&rs, &b));
    let component_equal = la == lb;
    let (modular, modular_note) = match same_orientation_modular(&rs, &a, &b) {
        Ok(m) => (Some(m), None),
        Err(e @ (AlcoveError::UnsupportedType(_) | AlcoveError::ComponentMismatch)) => {
            (None, Some(format!("hypothesis not met: {e}")))
        }
        Err(e) => return Err(e.into()),
    };
    let class = |v: &ShiVector, l: &alcove_core::AdmittedVector| {
        let s = section_of(&rs, v);
        ClassDoc {
            k: v.entries().to_vec(),
            lambda: l.entries().to_vec(),
            h1: h1_class(&rs, &s),
            section: s.coeffs,
        }
    };
    let doc = OrientDoc {
        schema: SchemaTag,
        oracle,
        theorem,
        modular,
        modular_note,
        component_equal,
        classes: vec![class(&a, &la), class(&b, &lb)],
    };
    if sys.json {
        print_json(&doc);
        return Ok(ExitCode::SUCCESS);
    }
    let verdict = |same: bool| if same { "same" } else { "different" };
    println!("oracle    {}", verdict(doc.oracle));
    println!("theorem   {}", verdict(doc.theorem));
    match doc.modular {
        Some(m) => println!("modular   {}", verdict(m)),
        None => println!("modular   {}", doc.modular_note.as_deref().unwrap_or("n/a")),
    }
    println!("component {}", if component_equal { "equal" } else { "different" });
    for (i, c) in doc.classes.iter().enumerate() {
        println!(
            "alcove {}: lambda {} section {} class {}",
            i + 1,
            fmt_vec(&c.lambda),
            fmt_vec(&c.section),
            c.h1
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(sys: &SystemArgs, radius: usize) -> CmdResult {
    let rs = system(sys)?;
    let report = classify_ball(&rs, radius);
    let clean = report.is_clean();
    if sys.json {
        print_json(&VerifyDoc::from(report));
    } else {
        println!(
            "{} radius {}: {} elements, {} orientation classes, {} components, {} H1 classes",
            report.root_system,
            report.radius,
            report.elements,
            report.orientation_classes,
            report.components,
            report.h1_classes
        );
        println!(
            "{} pairs, {} in a common component, injective {}",
            report.pairs_checked, report.same_component_pairs, report.injective
        );
        println!("{} discrepancies", report.discrepancies.len());
        for d in &report.discrepancies {
            println!(
                "  [{}] vs [{}]: oracle {} theorem {} modular {:?}",
                d.word1, d.word2, d.oracle, d.theorem, d.modular
            );
        }
    }
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_render(
    sys: &SystemArgs,
    spec: RenderSpec,
    output: &Option<PathBuf>,
) -> CmdResult {
    let rs = system(sys)?;
    let svg = render(&rs, &spec)?;
    match output {
        Some(path) => std::fs::write(path, svg)
            .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{svg}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Roots(sys) => cmd_roots(sys),
        Command::Shi { sys, word, element } => cmd_shi(sys, word, element),
        Command::IsAlcove { sys, input } => cmd_is_alcove(sys, input),
        Command::Components { sys, input } => cmd_components(sys, input),
        Command::H1(sys) => cmd_h1(sys),
        Command::Orient { sys, v1, v2, w1, w2 } => cmd_orient(sys, v1, v2, w1, w2),
        Command::Verify { sys, radius } => cmd_verify(sys, *radius),
        Command::Render { sys, radius, coloring, labels, width, height, output } => cmd_render(
            sys,
            RenderSpec {
                radius: *radius,
                coloring: *coloring,
                width: *width,
                height: *height,
                labels: *labels,
            },
            output,
        ),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `alcove-shi --help` for usage");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
