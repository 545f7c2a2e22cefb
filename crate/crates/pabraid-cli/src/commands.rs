use std::fmt::Write as _;

use pabraid::braid::Monotonicity;
use pabraid::cone::{fiber_class_of_program, normalized_entropy_of_class};
use pabraid::dynnikov::{braids_equal, entropy_estimate, Equality};
use pabraid::families::{default_seed, generate, is_palindromic, is_skew_palindromic};
use pabraid::foliation::{penner_floor_for_braid, prong_counts, puncture_fill_validity, OrbitData, TorusClass};
use pabraid::monotonic::odd_continued_fraction;
use pabraid::spin::{lift_braid, lift_braid_with_genus, preserves_form, MappingWord};
use pabraid::three_braid::exact_dilatation;
use pabraid::{
    BraidWord, ConeClass, ConeContext, CurveCoordinates, EntropyError, EntropyEstimate, EstimatorConfig, FamilyName,
    FamilySpec, PaWord, QuadraticForm, StandardForm, TwistProgram,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::*;
use crate::error::CliError;
use crate::report::*;
use crate::table::Table;

/// What a command produced, before it is printed or written.
pub struct Rendered {
    pub json: serde_json::Value,
    pub text: String,
    pub table: Option<Table>,
    pub diagnostics: Vec<Diagnostic>,
    pub seed: Option<String>,
}

impl Rendered {
    fn new(report: &impl Serialize, text: String) -> Result<Self, CliError> {
        Ok(Self { json: serde_json::to_value(report)?, text, table: None, diagnostics: Vec::new(), seed: None })
    }

    fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    fn with_seed(mut self, seed: impl Into<String>) -> Self {
        self.seed = Some(seed.into());
        self
    }

    fn diagnose(mut self, subject: impl Into<String>, estimate: &EntropyEstimate) -> Self {
        if !estimate.converged {
            self.diagnostics.push(Diagnostic { subject: subject.into(), estimate: estimate.clone() });
        }
        self
    }
}

pub fn estimator_config(cli: &Cli) -> Result<EstimatorConfig, CliError> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {}", cli.tol)));
    }
    if cli.max_iter == 0 {
        return Err(CliError::Usage("iteration cap must be positive".into()));
    }
    Ok(EstimatorConfig { tol: cli.tol, max_iter: cli.max_iter, seed: None })
}

fn parse_word(args: &WordArgs) -> Result<BraidWord, CliError> {
    let b = BraidWord::parse_with_degree(&args.word, args.degree)?;
    Ok(if args.spherical { b.sphericalize() } else { b })
}

fn parse_seed(args: &SeedArgs) -> Result<StandardForm, CliError> {
    Ok(StandardForm::parse_blocks(args.degree, &args.blocks)?)
}

fn parse_program(text: &str) -> Result<TwistProgram, CliError> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let entries = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| CliError::Usage(format!("bad program entry {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TwistProgram::new(entries)?)
}

fn parse_pair(text: &str, what: &str) -> Result<(i64, i64), CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => Err(CliError::Usage(format!("bad {what} {text:?}: expected two integers"))),
        },
        _ => Err(CliError::Usage(format!("bad {what} {text:?}: expected \"a,b\""))),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn opt_f64(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn dispatch(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Braid(c) => braid(cli, c),
        Command::Family(a) => family(cli, a),
        Command::Cone(c) => cone(cli, c),
        Command::Prongs(a) => prongs(a),
        Command::Tribraid(a) => tribraid(cli, a),
        Command::Entropy(a) => entropy(cli, a),
        Command::Spin(c) => spin(c),
        Command::Reproduce(c) => reproduce(cli, c),
    }
}

fn braid(cli: &Cli, cmd: &BraidCommand) -> Result<Rendered, CliError> {
    match cmd {
        BraidCommand::Info(args) => braid_info(args),
        BraidCommand::Equal { left, other } => {
            let l = parse_word(left)?;
            let r = BraidWord::parse_with_degree(other, Some(l.degree()))?;
            let r = if left.spherical { r.sphericalize() } else { r };
            let verdict = braids_equal(&l, &r);
            let text = match &verdict {
                Equality::Equal => "equal\n".to_string(),
                Equality::Distinct(w) => format!("distinct ({w:?})\n"),
            };
            Rendered::new(&EqualityReport { left: l, right: r, verdict }, text)
        }
        BraidCommand::Standard { seed, program } => {
            let form = parse_seed(seed)?;
            let program = program.as_deref().map(parse_program).transpose()?;
            let (built, class) = match &program {
                Some(p) => {
                    let class = fiber_class_of_program(p).ok();
                    (form.apply_program(p)?, class)
                }
                None => (form.clone(), None),
            };
            let word = built.to_braid_word();
            let mut text = format!("blocks  {}\nword    {}\n", built.blocks_text(), word);
            if let Some(c) = class {
                let _ = writeln!(text, "class   ({}, {})", c.x, c.y);
            }
            let report = StandardFormReport { closed_form: built.closed_form(), form: built, word, program, class };
            Ok(Rendered::new(&report, text)?.with_seed(form.blocks_text()))
        }
        BraidCommand::Gamma { seed, with_entropy } => {
            let form = parse_seed(seed)?;
            let gamma = form.ef_gamma();
            let config = estimator_config(cli)?;
            let estimate = with_entropy.then(|| entropy_estimate(&gamma, &config)).transpose()?;
            let mut text = format!("gamma   {gamma}\n");
            if let Some(e) = &estimate {
                let _ = writeln!(text, "log λ   {}", e.value);
            }
            let mut r = Rendered::new(&GammaReport { form: form.clone(), gamma, estimate: estimate.clone() }, text)?
                .with_seed(form.blocks_text());
            if let Some(e) = &estimate {
                r = r.diagnose("gamma", e);
            }
            Ok(r)
        }
    }
}

fn braid_info(args: &WordArgs) -> Result<Rendered, CliError> {
    let b = parse_word(args)?;
    let perm = b.permutation();
    let fixed_points = perm.fixed_points();
    let linking = if b.is_spherical() {
        Vec::new()
    } else {
        fixed_points.iter().map(|&s| b.linking_profile(s)).collect::<Result<Vec<_>, _>>()?
    };
    let info = BraidInfo {
        length: b.len(),
        exponent_sum: b.exponent_sum(),
        positive: b.is_positive(),
        permutation: perm.to_string(),
        images: perm.images().to_vec(),
        fixed_points: fixed_points.clone(),
        palindromic: is_palindromic(&b),
        skew_palindromic: is_skew_palindromic(&b),
        linking,
        word: b,
    };
    let mut text = String::new();
    let fixed: Vec<String> = info.fixed_points.iter().map(usize::to_string).collect();
    let _ = writeln!(text, "braid             {}", info.word);
    let _ = writeln!(text, "length            {}", info.length);
    let _ = writeln!(text, "exponent sum      {}", info.exponent_sum);
    let _ = writeln!(text, "positive          {}", yes_no(info.positive));
    let _ = writeln!(text, "permutation       {}", info.permutation);
    let _ = writeln!(text, "fixed points      {}", if fixed.is_empty() { "none".into() } else { fixed.join(" ") });
    for (name, v) in [("palindromic", info.palindromic), ("skew-palindromic", info.skew_palindromic)] {
        let _ = writeln!(text, "{name:<17} word {}, braid {}", yes_no(v.word_level), yes_no(v.braid_level));
    }
    for prof in &info.linking {
        let verdict = match prof.verdict {
            Monotonicity::Increasing => "increasing",
            Monotonicity::Decreasing => "decreasing",
            Monotonicity::Indeterminate => "indeterminate",
        };
        let lk: Vec<String> = prof.components.iter().map(|c| c.linking.to_string()).collect();
        let certified = if prof.conclusive { ", certified" } else { "" };
        let _ = writeln!(text, "strand {:<10} {verdict}, u = {}, linking [{}]{certified}", prof.strand, prof.u, lk.join(" "));
    }
    Rendered::new(&info, text)
}

fn family_seed(args: &FamilyArgs) -> Result<Option<StandardForm>, CliError> {
    if !args.name.is_seeded() {
        if args.seed_blocks.is_some() || args.k != 0 {
            return Err(CliError::Usage(format!("family {} takes no seed or pre-twist", args.name)));
        }
        return Ok(None);
    }
    match (&args.seed_blocks, args.name) {
        (Some(blocks), _) => Ok(Some(StandardForm::parse_blocks(args.seed_degree, blocks)?)),
        (None, FamilyName::Z) => Ok(Some(default_seed())),
        (None, name) => Err(CliError::Usage(format!("family {name} needs --seed-blocks"))),
    }
}

fn family(cli: &Cli, args: &FamilyArgs) -> Result<Rendered, CliError> {
    let seed = family_seed(args)?;
    if args.k != 0 && args.name != FamilyName::Z {
        return Err(CliError::Usage("--k applies to the z family only".into()));
    }
    let config = estimator_config(cli)?;
    let rows = args
        .p
        .values()
        .par_iter()
        .map(|&p| {
            let spec = FamilySpec { name: args.name, p, seed: seed.clone(), k: args.k };
            let member = generate(&spec)?;
            let estimate = if args.with_entropy { Some(entropy_estimate(&member.word, &config)?) } else { None };
            let degree = member.word.degree();
            Ok(FamilyRow {
                p,
                degree,
                normalized_entropy: estimate.as_ref().map(|e| (degree - 1) as f64 * e.value),
                estimate,
                word: member.word,
                companion: member.companion,
                standard_form: member.standard_form,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut table = Table::new(&["p", "degree", "ent", "Ent", "iterations", "converged", "word"]);
    for r in &rows {
        let e = r.estimate.as_ref();
        table.push(vec![
            r.p.to_string(),
            r.degree.to_string(),
            opt_f64(e.map(|e| e.value)),
            opt_f64(r.normalized_entropy),
            e.map(|e| e.iterations.to_string()).unwrap_or_default(),
            e.map(|e| e.converged.to_string()).unwrap_or_default(),
            r.word.letters().iter().map(i32::to_string).collect::<Vec<_>>().join(" "),
        ]);
    }
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(text, "{}({}) {}", args.name, r.p, r.word);
        if let Some(c) = &r.companion {
            let _ = writeln!(text, "  companion {c}");
        }
        if let (Some(e), Some(ent)) = (&r.estimate, r.normalized_entropy) {
            let flag = if e.converged { "" } else { "  (not converged)" };
            let _ = writeln!(text, "  log λ = {}  Ent = {ent}{flag}", e.value);
        }
    }
    let report = FamilyReport { family: args.name, seed: seed.clone(), k: args.k, rows };
    let mut rendered = Rendered::new(&report, text)?.with_table(table);
    if let Some(s) = &seed {
        rendered = rendered.with_seed(format!("B{} {}", s.degree(), s.blocks_text()));
    }
    for r in &report.rows {
        if let Some(e) = &r.estimate {
            rendered = rendered.diagnose(format!("{}({})", args.name, r.p), e);
        }
    }
    Ok(rendered)
}

fn cone(cli: &Cli, cmd: &ConeCommand) -> Result<Rendered, CliError> {
    match cmd {
        ConeCommand::Norm { n, u, epsilon, x, y } => {
            let context = ConeContext::new(*n, *u, *epsilon)?;
            let class = ConeClass::new(*x, *y);
            let norm = context.thurston_norm(class)?;
            Rendered::new(&NormReport { context, class, norm }, format!("{norm}\n"))
        }
        ConeCommand::Fraction { x, y } => {
            let program = odd_continued_fraction(*x, *y)?;
            let text = format!("{program}\n");
            Rendered::new(&FractionReport { class: ConeClass::new(*x, *y), program }, text)
        }
        ConeCommand::Class { program } => {
            let program = parse_program(program)?;
            let class = fiber_class_of_program(&program)?;
            let text = format!("({}, {})\n", class.x, class.y);
            Rendered::new(&FractionReport { class, program }, text)
        }
        ConeCommand::Table { seed, max } => {
            let form = parse_seed(seed)?;
            let context = ConeContext::of_seed(&form);
            let config = estimator_config(cli)?;
            let classes: Vec<ConeClass> = (1..=*max)
                .flat_map(|x| (1..=*max).map(move |y| ConeClass::new(x, y)))
                .filter(ConeClass::is_primitive)
                .collect();
            let rows = classes
                .par_iter()
                .map(|&c| -> Result<ConeRow, CliError> {
                    match normalized_entropy_of_class(&context, &form, c, &config) {
                        Ok(e) => Ok(e.into()),
                        Err(pabraid::ConeError::Entropy(EntropyError::NotConverged(est))) => {
                            let norm = context.thurston_norm(c)?;
                            Ok(ConeRow { class: c, norm, degree: norm as usize + 1, normalized_entropy: norm as f64 * est.value, estimate: *est })
                        }
                        Err(e) => Err(e.into()),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut table = Table::new(&["x", "y", "norm", "degree", "ent", "Ent", "iterations", "converged"]);
            for r in &rows {
                table.push(vec![
                    r.class.x.to_string(),
                    r.class.y.to_string(),
                    r.norm.to_string(),
                    r.degree.to_string(),
                    r.estimate.value.to_string(),
                    r.normalized_entropy.to_string(),
                    r.estimate.iterations.to_string(),
                    r.estimate.converged.to_string(),
                ]);
            }
            let text = table.to_text();
            let report = ConeTableReport { seed: form.clone(), context, rows };
            let mut rendered = Rendered::new(&report, text)?.with_table(table).with_seed(format!("B{} {}", form.degree(), form.blocks_text()));
            for r in &report.rows {
                rendered = rendered.diagnose(format!("({}, {})", r.class.x, r.class.y), &r.estimate);
            }
            Ok(rendered)
        }
    }
}

fn prongs(args: &ProngsArgs) -> Result<Rendered, CliError> {
    let base = match (&args.axis, &args.strand) {
        (None, None) => OrbitData::twisted_pair_preset(),
        (Some(a), Some(s)) => {
            let (ap, aq) = parse_pair(a, "axis class")?;
            let (sp, sq) = parse_pair(s, "strand class")?;
            OrbitData::new(TorusClass::new(ap, aq), TorusClass::new(sp, sq))?
        }
        _ => return Err(CliError::Usage("--axis and --strand go together".into())),
    };
    let orbit = match args.twists {
        0 => base,
        k => base.compose_full_twist(k)?,
    };
    let mut rows = Vec::new();
    for &p in args.p.values() {
        let x = i64::try_from(p).map_err(|_| CliError::Usage(format!("parameter {p} too large")))?;
        let (axis_prongs, strand_prongs) = prong_counts(&orbit, args.epsilon, x, 1)?;
        let fill = puncture_fill_validity(axis_prongs)?;
        rows.push(ProngRow { p, class: ConeClass::new(x, 1), axis_prongs, strand_prongs, fill });
    }
    let mut table = Table::new(&["p", "x", "y", "axis_prongs", "strand_prongs", "fill"]);
    for r in &rows {
        let fill = serde_json::to_value(r.fill)?.as_str().unwrap_or_default().to_string();
        table.push(vec![
            r.p.to_string(),
            r.class.x.to_string(),
            r.class.y.to_string(),
            r.axis_prongs.to_string(),
            r.strand_prongs.to_string(),
            fill,
        ]);
    }
    let text = table.to_text();
    let report = ProngReport { axis_orbit: orbit.axis, strand_orbit: orbit.strand, twists: args.twists, epsilon: args.epsilon, rows };
    Ok(Rendered::new(&report, text)?.with_table(table))
}

fn tribraid(cli: &Cli, args: &TribraidArgs) -> Result<Rendered, CliError> {
    let b = BraidWord::parse_with_degree(&args.word, Some(3))?;
    let w = PaWord::from_braid(&b)?;
    let d = exact_dilatation(&w)?;
    let config = estimator_config(cli)?;
    let estimate = args.with_entropy.then(|| entropy_estimate(&b, &config)).transpose()?;
    let report = TribraidReport {
        word: b,
        trace: d.trace.to_string(),
        closed_form: d.closed_form(),
        lambda: d.value,
        log_lambda: d.log_value,
        normalized_entropy: 2.0 * d.log_value,
        estimate,
    };
    let mut text = format!("trace   {}\nλ       {} ≈ {}\nlog λ   {}\nEnt     {}\n", report.trace, report.closed_form, report.lambda, report.log_lambda, report.normalized_entropy);
    if let Some(e) = &report.estimate {
        let _ = writeln!(text, "estimate {} (|Δ| = {:e})", e.value, (e.value - report.log_lambda).abs());
    }
    let mut r = Rendered::new(&report, text)?;
    if let Some(e) = &report.estimate {
        r = r.diagnose("tribraid", e);
    }
    Ok(r)
}

fn entropy(cli: &Cli, args: &EntropyArgs) -> Result<Rendered, CliError> {
    let b = parse_word(&args.word)?;
    if b.is_spherical() {
        return Err(CliError::Usage("the estimator works on disk braids; drop --spherical".into()));
    }
    let seed_pill = match &args.seed_pill {
        Some(s) => {
            let (first, last) = parse_pair(s, "seed pill")?;
            let cast = |v: i64| usize::try_from(v).map_err(|_| CliError::Usage(format!("bad puncture {v}")));
            (cast(first)?, cast(last)?)
        }
        None => (1, 2),
    };
    let mut config = estimator_config(cli)?;
    config.seed = Some(CurveCoordinates::pill(b.degree(), seed_pill.0, seed_pill.1)?);
    let estimate = entropy_estimate(&b, &config)?;
    let report = EntropyReport {
        normalized_entropy: (b.degree() - 1) as f64 * estimate.value,
        penner_floor: penner_floor_for_braid(b.degree())?,
        word: b,
        seed_pill,
        estimate,
    };
    let e = &report.estimate;
    let text = format!(
        "log λ        {}\nEnt          {}\niterations   {}\nconverged    {} ({:?})\n",
        e.value,
        report.normalized_entropy,
        e.iterations,
        yes_no(e.converged),
        e.stop_rule
    );
    Ok(Rendered::new(&report, text)?.diagnose(report.word.to_string(), &report.estimate).with_seed(format!("pill {},{}", seed_pill.0, seed_pill.1)))
}

fn form_of(kind: FormKind, genus: usize) -> Result<QuadraticForm, CliError> {
    Ok(match kind {
        FormKind::Odd => QuadraticForm::odd(genus)?,
        FormKind::Even => QuadraticForm::even(genus)?,
    })
}

fn spin_row(label: String, w: &MappingWord, form: FormKind) -> Result<SpinRow, CliError> {
    let q = form_of(form, w.genus())?;
    Ok(SpinRow { label, genus: w.genus(), form, letters: w.letters().to_vec(), preserves: preserves_form(w, &q) })
}

fn spin(cmd: &SpinCommand) -> Result<Rendered, CliError> {
    let rows = match cmd {
        SpinCommand::Check { family, p, word, degree, spherical, form, genus } => match (family, word) {
            (Some(fam), None) => {
                let (name, default_form) = match fam {
                    SpinFamily::O => (FamilyName::O, FormKind::Odd),
                    SpinFamily::V => (FamilyName::V, FormKind::Even),
                };
                let mut rows = Vec::new();
                for &p in p.values() {
                    let member = generate(&FamilySpec::fixed(name, p))?;
                    let companion = member.companion.expect("spin families carry companions");
                    let lifted = match genus {
                        Some(g) => lift_braid_with_genus(&companion, *g)?,
                        None => lift_braid(&companion)?,
                    };
                    rows.push(spin_row(format!("{name}({p})"), &lifted, form.unwrap_or(default_form))?);
                }
                rows
            }
            (None, Some(text)) => {
                let b = BraidWord::parse_with_degree(text, *degree)?;
                let b = if *spherical { b.sphericalize() } else { b };
                let lifted = match genus {
                    Some(g) => lift_braid_with_genus(&b, *g)?,
                    None => lift_braid(&b)?,
                };
                let form = form.ok_or_else(|| CliError::Usage("--word needs --form odd|even".into()))?;
                vec![spin_row(b.to_string(), &lifted, form)?]
            }
            _ => return Err(CliError::Usage("spin check needs exactly one of --family and --word".into())),
        },
        SpinCommand::Generators { genus } => {
            let mut rows = Vec::new();
            for &g in genus.values() {
                let g = usize::try_from(g).map_err(|_| CliError::Usage("genus too large".into()))?;
                for (letters, form) in generator_lists(g) {
                    let w = MappingWord::new(g, letters)?;
                    rows.push(spin_row(w.to_string(), &w, form)?);
                }
            }
            rows
        }
    };
    let mut table = Table::new(&["label", "genus", "form", "preserves"]);
    for r in &rows {
        let form = match r.form {
            FormKind::Odd => "odd",
            FormKind::Even => "even",
        };
        table.push(vec![r.label.clone(), r.genus.to_string(), form.into(), r.preserves.to_string()]);
    }
    let text = table.to_text();
    Rendered::new(&SpinReport { rows }, text).map(|r| r.with_table(table))
}

/// Generating sets of the odd and even spin groups in the hyperelliptic
/// generators: `t₂, t₃, t_{j+1}t_jt_{j+1}⁻¹ (j ≥ 4), t_k²` for the odd form
/// and `t_{j+1}t_jt_{j+1}⁻¹ (j ≥ 1), t_k²` for the even form.
pub fn generator_lists(genus: usize) -> Vec<(Vec<i32>, FormKind)> {
    let n = 2 * genus as i32 + 1;
    let mut out = vec![(vec![2], FormKind::Odd), (vec![3], FormKind::Odd)];
    for j in 1..n {
        let conj = vec![j + 1, j, -(j + 1)];
        if j >= 4 {
            out.push((conj.clone(), FormKind::Odd));
        }
        out.push((conj, FormKind::Even));
    }
    for k in 1..=n {
        out.push((vec![k, k], FormKind::Odd));
        out.push((vec![k, k], FormKind::Even));
    }
    out
}

/// `2 log(2 + √3)`, the normalized entropy of the seed `σ₁²σ₂⁻¹`.
pub fn z_limit() -> f64 {
    2.0 * (2.0 + 3f64.sqrt()).ln()
}

fn limit_rows(members: &[(u64, BraidWord)], limit: f64, config: &EstimatorConfig) -> Result<Vec<(LimitRow, EntropyEstimate)>, CliError> {
    members
        .par_iter()
        .map(|(p, word)| {
            let e = entropy_estimate(word, config)?;
            let ent = (word.degree() - 1) as f64 * e.value;
            let row = LimitRow {
                p: *p,
                degree: word.degree(),
                log_lambda: e.value,
                normalized_entropy: ent,
                gap: (ent - limit).abs(),
                iterations: e.iterations,
                converged: e.converged,
            };
            Ok((row, e))
        })
        .collect()
}

fn reproduce(cli: &Cli, cmd: &ReproduceCommand) -> Result<Rendered, CliError> {
    let config = estimator_config(cli)?;
    let (experiment, seed, name, args) = match cmd {
        ReproduceCommand::ZLimit(a) => ("z-limit", default_seed(), FamilyName::Z, a),
        ReproduceCommand::BetaLimit(a) => ("beta-limit", StandardForm::new(3, vec![vec![-1], vec![-1]])?, FamilyName::Beta, a),
    };
    let members = args
        .p
        .values()
        .iter()
        .map(|&p| Ok((p, generate(&FamilySpec::seeded(name, p, seed.clone(), 0))?.word)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let limit = match name {
        FamilyName::Z => z_limit(),
        _ => {
            let b1 = generate(&FamilySpec::seeded(FamilyName::BP, 1, seed.clone(), 0))?.word;
            let e = entropy_estimate(&b1, &config)?;
            if !e.converged {
                return Err(CliError::NotConverged(vec![Diagnostic { subject: "b_p(1)".into(), estimate: e }]));
            }
            (b1.degree() - 1) as f64 * e.value
        }
    };
    let (rows, estimates): (Vec<LimitRow>, Vec<EntropyEstimate>) = limit_rows(&members, limit, &config)?.into_iter().unzip();
    let mut table = Table::new(&["p", "degree", "ent", "Ent", "gap", "iterations", "converged"]);
    for r in &rows {
        table.push(vec![
            r.p.to_string(),
            r.degree.to_string(),
            r.log_lambda.to_string(),
            r.normalized_entropy.to_string(),
            r.gap.to_string(),
            r.iterations.to_string(),
            r.converged.to_string(),
        ]);
    }
    let text = String::from_utf8(table.to_csv()?).expect("csv is utf-8");
    let report = LimitReport { experiment: experiment.into(), seed: seed.clone(), limit, rows };
    let mut rendered = Rendered::new(&report, text)?.with_table(table).with_seed(format!("B{} {}", seed.degree(), seed.blocks_text()));
    for (r, e) in report.rows.iter().zip(&estimates) {
        rendered = rendered.diagnose(format!("{name}({})", r.p), e);
    }
    Ok(rendered)
}
