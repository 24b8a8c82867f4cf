//! Subcommand implementations and their text/JSON rendering.
//!
//! Every handler prints to stdout in a fixed order derived only from its
//! inputs, so repeated runs produce identical bytes; diagnostics and
//! errors go to stderr via the caller.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use loopcosets::bol::{self, EnumConfig};
use loopcosets::cosets::{coset_family, intersection_closure, semilattices_isomorphic};
use loopcosets::designs::{
    design_params, designs_isomorphic, extract_design, realize_design, translate_design_search,
    DesignParams,
};
use loopcosets::intersections::{IntersectionRecord, IntersectionScan};
use loopcosets::io;
use loopcosets::loops::{catalog, check_properties, LoopTable, Side, Subloop};
use loopcosets::orbits::{lagrange_report, orbit_action_rows, relative_orbits};
use loopcosets::SymSet;
use serde_json::{json, Value};

use crate::source;
use crate::{CatalogCommand, Command, DesignCommand};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Validate { loop_spec } => validate(&loop_spec),
        Command::Props { loop_spec, json } => props(&loop_spec, json),
        Command::Cosets {
            target,
            side,
            distinct,
            semilattice,
            compare_lr,
            json,
        } => cosets(
            &target.loop_spec,
            &target.subloop,
            side.into(),
            distinct,
            semilattice,
            compare_lr,
            json,
        ),
        Command::Semilattice {
            target,
            side,
            compare_lr,
            json,
        } => semilattice_cmd(&target.loop_spec, &target.subloop, side.into(), compare_lr, json),
        Command::Partition { rect_file } => partition(&rect_file),
        Command::Design { action } => match action {
            DesignCommand::Extract {
                target,
                side,
                out,
                json,
            } => design_extract(&target.loop_spec, &target.subloop, side.into(), out, json),
            DesignCommand::Params { design_file, json } => design_params_cmd(&design_file, json),
            DesignCommand::Realize {
                design_file,
                inner,
                out,
            } => design_realize(&design_file, &inner, out),
            DesignCommand::Isomorphic { design_a, design_b } => {
                design_isomorphic(&design_a, &design_b)
            }
            DesignCommand::TranslateSearch {
                loop_spec,
                k,
                t,
                lambda,
                max_results,
            } => translate_search(&loop_spec, k, t, lambda, max_results),
        },
        Command::Orbits {
            target,
            lagrange,
            check_against,
            dump_subloop,
            json,
        } => orbits_cmd(
            &target.loop_spec,
            &target.subloop,
            lagrange,
            check_against,
            dump_subloop,
            json,
        ),
        Command::BolOrbits {
            subloop,
            max_symbols,
            max_rects,
            threads,
            dump_rects,
            summary,
        } => bol_orbits(&subloop, max_symbols, max_rects, threads, dump_rects, summary),
        Command::Intersect {
            target,
            pair,
            all_pairs: _,
            report,
            json,
        } => intersect(&target.loop_spec, &target.subloop, pair, report, json),
        Command::Catalog { action } => match action {
            CatalogCommand::List => {
                for (name, blurb) in catalog::listing() {
                    println!("{name:<10} {blurb}");
                }
                Ok(())
            }
            CatalogCommand::Show { name } => {
                let q = catalog::by_name(&name)?;
                print!("{}", io::serialize_loop(&q));
                Ok(())
            }
        },
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// A missing partition leaves the decomposition question open rather
/// than settling it, so the negative verdict reads `unknown`.
fn partition_verdict(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "unknown"
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_report(command: &str, inputs: Value, parameters: Value, results: Value) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "parameters": parameters,
        "results": results,
    })
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn write_json(value: &Value, path: &Path) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(value).expect("report serializes"));
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn loop_header(spec: &str, q: &LoopTable) {
    println!("loop: {} (order {})", q.name().unwrap_or(spec), q.order());
}

fn subloop_header(s: &Subloop<'_>) {
    println!("subloop: {} (order {})", s.elements(), s.order());
}

fn sets_json(sets: &[SymSet]) -> Value {
    json!(sets.iter().map(SymSet::to_vec).collect::<Vec<_>>())
}

fn validate(spec: &str) -> Result<()> {
    let q = source::load_loop(spec)?;
    match q.name() {
        Some(name) => println!("valid loop of order {} ({name})", q.order()),
        None => println!("valid loop of order {}", q.order()),
    }
    Ok(())
}

fn property_rows(q: &LoopTable) -> Vec<(&'static str, bool)> {
    let p = check_properties(q);
    vec![
        ("associative", q.is_associative()),
        ("commutative", p.commutative),
        ("two_sided_inverses", p.two_sided_inverses),
        ("aaip", p.aaip),
        ("left_inverse_property", p.left_inverse_property),
        ("right_inverse_property", p.right_inverse_property),
        ("left_bol", p.left_bol),
        ("right_bol", p.right_bol),
        ("moufang", p.moufang),
        ("extra", p.extra),
        ("power_associative", p.power_associative),
        ("right_power_alternative", p.right_power_alternative),
        ("left_automorphic", p.left_automorphic),
    ]
}

fn props(spec: &str, as_json: bool) -> Result<()> {
    let q = source::load_loop(spec)?;
    let rows = property_rows(&q);
    if as_json {
        let mut flags = serde_json::Map::new();
        for (name, value) in rows {
            flags.insert(name.to_owned(), Value::Bool(value));
        }
        let report = run_report(
            "props",
            json!({ "loop": spec }),
            json!({}),
            json!({ "order": q.order(), "properties": flags }),
        );
        print_json(&report);
    } else {
        println!("{:<24} {}", "order", q.order());
        for (name, value) in rows {
            println!("{name:<24} {}", yesno(value));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cosets(
    spec: &str,
    generators: &[usize],
    side: Side,
    distinct: bool,
    semilattice: bool,
    compare_lr: bool,
    as_json: bool,
) -> Result<()> {
    let q = source::load_loop(spec)?;
    let s = source::close_subloop(&q, generators)?;
    let fam = coset_family(&s, side);
    if as_json {
        let mut results = json!({
            "subloop": s.elements().to_vec(),
            "side": side.to_string(),
            "cosets": (0..q.order()).map(|x| fam.coset(x).to_vec()).collect::<Vec<_>>(),
            "distinct": fam
                .distinct()
                .iter()
                .map(|(rep, set)| json!([rep, set.to_vec()]))
                .collect::<Vec<_>>(),
            "partition": fam.is_partition(),
        });
        if semilattice {
            results["semilattice"] = sets_json(intersection_closure(&fam).elements());
        }
        if compare_lr {
            results["compare_lr"] = compare_lr_json(&s)?;
        }
        let report = run_report(
            "cosets",
            json!({ "loop": spec }),
            json!({ "subloop": generators, "side": side.to_string() }),
            results,
        );
        print_json(&report);
        return Ok(());
    }
    loop_header(spec, &q);
    subloop_header(&s);
    println!("side: {side}");
    if distinct {
        let d = fam.distinct();
        println!("distinct cosets: {}", d.len());
        for (rep, set) in &d {
            println!("{rep}: {set}");
        }
    } else {
        for x in 0..q.order() {
            println!("{x}: {}", fam.coset(x));
        }
        println!("distinct cosets: {}", fam.distinct().len());
    }
    println!("partition: {}", yesno(fam.is_partition()));
    if semilattice {
        let lat = intersection_closure(&fam);
        println!("semilattice: {} sets", lat.len());
        for set in lat.elements() {
            println!("{set}");
        }
    }
    if compare_lr {
        print_compare_lr(&s)?;
    }
    Ok(())
}

fn print_compare_lr(s: &Subloop<'_>) -> Result<()> {
    let left = intersection_closure(&coset_family(s, Side::Left));
    let right = intersection_closure(&coset_family(s, Side::Right));
    println!("left semilattice: {} sets", left.len());
    println!("right semilattice: {} sets", right.len());
    match semilattices_isomorphic(&left, &right)? {
        Some(map) => {
            println!("isomorphic: yes");
            for (a, b) in map {
                println!("{a} -> {b}");
            }
        }
        None => println!("isomorphic: no"),
    }
    Ok(())
}

fn compare_lr_json(s: &Subloop<'_>) -> Result<Value> {
    let left = intersection_closure(&coset_family(s, Side::Left));
    let right = intersection_closure(&coset_family(s, Side::Right));
    let map = semilattices_isomorphic(&left, &right)?;
    Ok(json!({
        "left": sets_json(left.elements()),
        "right": sets_json(right.elements()),
        "isomorphic": map.is_some(),
        "mapping": map.map(|pairs| {
            pairs
                .iter()
                .map(|(a, b)| json!([a.to_vec(), b.to_vec()]))
                .collect::<Vec<_>>()
        }),
    }))
}

fn semilattice_cmd(
    spec: &str,
    generators: &[usize],
    side: Side,
    compare_lr: bool,
    as_json: bool,
) -> Result<()> {
    let q = source::load_loop(spec)?;
    let s = source::close_subloop(&q, generators)?;
    if as_json {
        let results = if compare_lr {
            compare_lr_json(&s)?
        } else {
            let lat = intersection_closure(&coset_family(&s, side));
            json!({
                "side": side.to_string(),
                "semilattice": sets_json(lat.elements()),
            })
        };
        let report = run_report(
            "semilattice",
            json!({ "loop": spec }),
            json!({ "subloop": generators, "side": side.to_string(), "compare_lr": compare_lr }),
            results,
        );
        print_json(&report);
        return Ok(());
    }
    loop_header(spec, &q);
    subloop_header(&s);
    if compare_lr {
        print_compare_lr(&s)?;
    } else {
        let lat = intersection_closure(&coset_family(&s, side));
        println!("side: {side}");
        println!("semilattice: {} sets", lat.len());
        for set in lat.elements() {
            println!("{set}");
        }
    }
    Ok(())
}

fn partition(rect_file: &Path) -> Result<()> {
    let text = fs::read_to_string(rect_file)
        .with_context(|| format!("reading {}", rect_file.display()))?;
    let rect = io::parse_rectangle(&text)
        .with_context(|| format!("parsing {}", rect_file.display()))?;
    let record = bol::analyze(&rect);
    println!("size: {}", record.size);
    println!("columns: {}", rect.rows().first().map_or(0, Vec::len));
    println!("divisible: {}", yesno(record.divisible));
    match &record.partition_rows {
        Some(rows) => {
            println!("partition: yes");
            println!("witness rows: {}", join(rows));
        }
        None => println!("partition: unknown"),
    }
    Ok(())
}

fn print_params(p: &DesignParams) {
    println!("k: {}", p.k);
    match p.r {
        Some(r) => println!("r: {r}"),
        None => println!("r: varies"),
    }
    if p.max_t >= 1 {
        println!(
            "t-design: {}-({}, {}, {})",
            p.max_t,
            p.v,
            p.k,
            p.lambda[p.max_t - 1]
        );
    } else {
        println!("t-design: none");
    }
    println!("symmetric: {}", yesno(p.symmetric));
    println!("simple: {}", yesno(p.simple));
}

fn params_json(p: &DesignParams) -> Value {
    json!({
        "v": p.v,
        "b": p.b,
        "k": p.k,
        "r": p.r,
        "max_t": p.max_t,
        "lambda": p.lambda,
        "symmetric": p.symmetric,
        "simple": p.simple,
    })
}

fn design_extract(
    spec: &str,
    generators: &[usize],
    side: Side,
    out: Option<PathBuf>,
    as_json: bool,
) -> Result<()> {
    let q = source::load_loop(spec)?;
    let s = source::close_subloop(&q, generators)?;
    let d = extract_design(&s, side)?;
    let params = design_params(&d)?;
    if as_json {
        let report = run_report(
            "design extract",
            json!({ "loop": spec }),
            json!({ "subloop": generators, "side": side.to_string() }),
            json!({
                "points": d.points(),
                "blocks": sets_json(d.blocks()),
                "params": params_json(&params),
            }),
        );
        print_json(&report);
    } else {
        loop_header(spec, &q);
        subloop_header(&s);
        println!("side: {side}");
        println!("design: v={} b={}", d.v(), d.b());
        for (i, block) in d.blocks().iter().enumerate() {
            println!("block {i}: {block}");
        }
        print_params(&params);
    }
    if let Some(path) = out {
        fs::write(&path, io::serialize_design(&d))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn design_params_cmd(design_file: &Path, as_json: bool) -> Result<()> {
    let d = source::load_design(design_file)?;
    let params = design_params(&d)?;
    if as_json {
        let report = run_report(
            "design params",
            json!({ "design": design_file.display().to_string() }),
            json!({}),
            params_json(&params),
        );
        print_json(&report);
    } else {
        println!("design: v={} b={}", d.v(), d.b());
        print_params(&params);
    }
    Ok(())
}

fn design_realize(design_file: &Path, inner_spec: &str, out: Option<PathBuf>) -> Result<()> {
    let d = source::load_design(design_file)?;
    let inner = if inner_spec == "cyclic" {
        let k = d.blocks().first().map_or(0, SymSet::len);
        if k == 0 {
            bail!("the design has no usable blocks; pass an explicit --inner");
        }
        catalog::cyclic(k)
    } else {
        source::load_loop(inner_spec)?
    };
    let q = realize_design(&d, &inner)?;
    println!("realized loop of order {}", q.order());
    match out {
        Some(path) => fs::write(&path, io::serialize_loop(&q))
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", io::serialize_loop(&q)),
    }
    Ok(())
}

fn design_isomorphic(file_a: &Path, file_b: &Path) -> Result<()> {
    let a = source::load_design(file_a)?;
    let b = source::load_design(file_b)?;
    match designs_isomorphic(&a, &b) {
        Some(map) => {
            println!("isomorphic: yes");
            for (p, q) in map {
                println!("{p} -> {q}");
            }
        }
        None => println!("isomorphic: no"),
    }
    Ok(())
}

fn translate_search(
    spec: &str,
    k: usize,
    t: usize,
    lambda: usize,
    max_results: Option<usize>,
) -> Result<()> {
    let q = source::load_loop(spec)?;
    loop_header(spec, &q);
    println!("searching: k={k} t={t} lambda={lambda}");
    let hits = translate_design_search(&q, k, t, lambda, max_results);
    for set in &hits {
        println!("{set}");
    }
    println!("found: {}", hits.len());
    Ok(())
}

fn orbits_cmd(
    spec: &str,
    generators: &[usize],
    lagrange: bool,
    check_against: Option<PathBuf>,
    dump_subloop: Option<PathBuf>,
    as_json: bool,
) -> Result<()> {
    let q = source::load_loop(spec)?;
    let s = source::close_subloop(&q, generators)?;
    let partition = relative_orbits(&s);
    let reports = lagrange.then(|| lagrange_report(&s));

    if let Some(path) = dump_subloop {
        let (table, _) = s.to_table();
        fs::write(&path, io::serialize_loop(&table))
            .with_context(|| format!("writing {}", path.display()))?;
    }

    if as_json {
        let orbits: Vec<Value> = partition
            .orbits()
            .iter()
            .enumerate()
            .map(|(i, orbit)| {
                let mut entry = json!({
                    "elements": orbit.to_vec(),
                    "size": orbit.len(),
                });
                if let Some(reps) = &reports {
                    entry["remainder"] = json!(reps[i].remainder);
                    entry["cover"] = json!(reps[i].coset_cover);
                }
                entry
            })
            .collect();
        let report = run_report(
            "orbits",
            json!({ "loop": spec }),
            json!({ "subloop": generators, "lagrange": lagrange }),
            json!({ "subloop": s.elements().to_vec(), "orbits": orbits }),
        );
        print_json(&report);
    } else {
        loop_header(spec, &q);
        subloop_header(&s);
        println!("orbits: {}", partition.orbits().len());
        for (i, orbit) in partition.orbits().iter().enumerate() {
            let mut line = format!("orbit {i}: size {} {}", orbit.len(), orbit);
            if let Some(reps) = &reports {
                line.push_str(&format!(" remainder {}", reps[i].remainder));
                match &reps[i].coset_cover {
                    Some(cover) => line.push_str(&format!(" cover {}", join(cover))),
                    None => line.push_str(" cover none"),
                }
            }
            println!("{line}");
        }
    }

    if let Some(path) = check_against {
        let rects = source::load_rectangles(&path)?;
        if let Some(bad) = rects
            .iter()
            .find(|r| r.rows().first().map_or(0, Vec::len) != s.order())
        {
            bail!(
                "rectangle width {} does not match the subloop order {}",
                bad.rows().first().map_or(0, Vec::len),
                s.order()
            );
        }
        let mut failures = 0;
        for (i, orbit) in partition.orbits().iter().enumerate() {
            let rows = orbit_action_rows(&s, *orbit);
            let missing: Vec<usize> = (0..orbit.len())
                .filter(|&root| !rects.contains(&bol::canonical_action_table(&rows, root)))
                .collect();
            if missing.is_empty() {
                println!("orbit {i}: all {} roots matched", orbit.len());
            } else {
                failures += missing.len();
                println!("orbit {i}: unmatched roots {}", join(&missing));
            }
        }
        if failures > 0 {
            bail!(
                "{failures} orbit action tables are missing from the enumeration \
                 (rectangles must be enumerated from this subloop's own table; \
                 see --dump-subloop)"
            );
        }
    }
    Ok(())
}

fn bol_orbits(
    subloop_spec: &str,
    max_symbols: Option<usize>,
    max_rects: Option<usize>,
    threads: usize,
    dump_rects: Option<PathBuf>,
    summary: Option<PathBuf>,
) -> Result<()> {
    let table = source::load_loop(subloop_spec)?;
    let order = table.order();
    let label = table.name().map(str::to_owned);
    let ctx = bol::build_context(table)?;

    let mut cfg = EnumConfig::for_order(order);
    if let Some(n) = max_symbols {
        if n < order {
            bail!("--max-symbols {n} is below the subloop order {order}");
        }
        cfg.max_symbols = n;
    }
    if let Some(n) = max_rects {
        cfg.max_rectangles = n;
    }
    cfg.threads = threads.max(1);

    let e = bol::enumerate(&ctx, &cfg);
    match &label {
        Some(name) => println!("subloop: {name} (order {order})"),
        None => println!("subloop: {subloop_spec} (order {order})"),
    }
    let records: Vec<_> = e.rectangles.iter().map(bol::analyze).collect();
    for (i, record) in records.iter().enumerate() {
        println!(
            "rectangle {i}: size {} partition {}",
            record.size,
            partition_verdict(record.partition_rows.is_some())
        );
    }
    let truncation = e.truncation;
    let totals = bol::summarize(records, truncation);
    println!("rectangles: {}", e.rectangles.len());
    println!(
        "lengths: {}",
        totals
            .lengths
            .iter()
            .map(|(len, mult)| format!("{len}:{mult}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    println!("partition: {}", partition_verdict(totals.all_partitioned));
    if truncation.symbol_cap {
        println!("truncated: symbol cap reached");
    }
    if truncation.rectangle_cap {
        println!("truncated: rectangle cap reached");
    }
    if truncation.time_exceeded {
        println!("truncated: time budget exceeded");
    }

    if let Some(dir) = dump_rects {
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, rect) in e.rectangles.iter().enumerate() {
            let path = dir.join(format!("rect-{i:04}.rect"));
            fs::write(&path, io::serialize_rectangle(rect))
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    if let Some(path) = summary {
        let report = json!({
            "command": "bol-orbits",
            "inputs": { "subloop": subloop_spec },
            "parameters": {
                "max_symbols": cfg.max_symbols,
                "max_rects": cfg.max_rectangles,
                "threads": cfg.threads,
            },
            "results": {
                "rectangles": e.rectangles.len(),
                "lengths": totals.lengths,
                "partition": partition_verdict(totals.all_partitioned),
            },
            "truncation": {
                "symbol_cap": truncation.symbol_cap,
                "rectangle_cap": truncation.rectangle_cap,
                "time_exceeded": truncation.time_exceeded,
            },
        });
        write_json(&report, &path)?;
    }
    Ok(())
}

fn record_json(r: &IntersectionRecord) -> Value {
    json!({
        "x": r.x,
        "y": r.y,
        "meet": r.meet.to_vec(),
        "fxy": r.fxy,
        "cycles": r.cycles,
        "shift_subloop": r.shift_subloop.map(|s| s.to_vec()),
    })
}

fn intersect(
    spec: &str,
    generators: &[usize],
    pair: Option<Vec<usize>>,
    report: Option<PathBuf>,
    as_json: bool,
) -> Result<()> {
    let q = source::load_loop(spec)?;
    let s = source::close_subloop(&q, generators)?;
    let right_bol = check_properties(&q).right_bol;
    let scan = IntersectionScan::new(s);

    let records = match &pair {
        Some(xy) => {
            let (x, y) = (xy[0], xy[1]);
            if x >= q.order() || y >= q.order() {
                bail!("pair ({x}, {y}) is outside 0..{}", q.order());
            }
            vec![scan.record(x, y)]
        }
        None => scan.all_pairs(),
    };

    let json_report = (as_json || report.is_some()).then(|| {
        run_report(
            "intersect",
            json!({ "loop": spec }),
            json!({ "subloop": generators, "pair": pair }),
            json!({
                "subloop": s.elements().to_vec(),
                "records": records.iter().map(record_json).collect::<Vec<_>>(),
            }),
        )
    });
    if let (Some(report_value), Some(path)) = (&json_report, &report) {
        write_json(report_value, path)?;
    }
    if as_json {
        print_json(json_report.as_ref().expect("built above"));
        return Ok(());
    }

    loop_header(spec, &q);
    subloop_header(&s);
    if pair.is_some() {
        let r = &records[0];
        println!("pair ({}, {})", r.x, r.y);
        println!("meet: {} (size {})", r.meet, r.meet.len());
        match &r.fxy {
            Some(pairs) => {
                let arrows: Vec<String> =
                    pairs.iter().map(|(u, v)| format!("{u} -> {v}")).collect();
                println!("fxy: {}", arrows.join(", "));
                println!(
                    "cycles: {}",
                    join(r.cycles.as_ref().expect("cycles accompany fxy"))
                );
            }
            None if r.meet.is_empty() => println!("fxy: none (empty meet)"),
            None => {
                debug_assert!(!right_bol);
                println!("fxy: none (the loop is not right Bol)");
            }
        }
        match &r.shift_subloop {
            Some(set) => println!("shift subloop: {set}"),
            None => println!("shift subloop: none"),
        }
    } else {
        let mut nonempty = 0;
        for r in &records {
            if r.meet.is_empty() {
                continue;
            }
            nonempty += 1;
            let mut line = format!("pair ({}, {}): meet {}", r.x, r.y, r.meet);
            if let Some(cycles) = &r.cycles {
                line.push_str(&format!(" cycles {}", join(cycles)));
            }
            if let Some(set) = &r.shift_subloop {
                line.push_str(&format!(" shift {set}"));
            }
            println!("{line}");
        }
        println!("pairs: {}", records.len());
        println!("nonempty meets: {nonempty}");
    }
    Ok(())
}
