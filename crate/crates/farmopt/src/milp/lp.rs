use std::fmt::Write as _;
use std::io::{self, Write};

use super::build::MilpInstance;
use super::ledger::{RowFamily, Sense, VarKind};

fn num(x: f64) -> String {
    if x == f64::INFINITY {
        "+inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x}")
    }
}

fn linear(out: &mut String, names: &[String], terms: impl Iterator<Item = (usize, f64)>) {
    let mut on_line = 0;
    let mut first = true;
    for (v, a) in terms {
        if a == 0.0 {
            continue;
        }
        let sign = if a < 0.0 { "-" } else if first { "" } else { "+" };
        let _ = write!(out, " {sign} {} {}", num(a.abs()), names[v]);
        first = false;
        on_line += 1;
        if on_line == 6 {
            out.push_str("\n   ");
            on_line = 0;
        }
    }
    if first {
        out.push_str(" 0");
    }
}

/// Render `instance` in CPLEX LP syntax. Rows are grouped by family, and each
/// group is preceded by a `\ family: <tag>` comment line.
pub fn to_lp_string(instance: &MilpInstance) -> String {
    let names: Vec<String> = instance.variables.iter().map(|v| v.name()).collect();
    let mut out = String::new();
    let d = instance.dims();
    let _ = writeln!(
        out,
        "\\ turbines {} levels {} days {} scenarios {}: {} variables, {} constraints",
        d.turbines,
        d.levels,
        d.days,
        d.scenarios,
        instance.num_vars(),
        instance.num_rows()
    );
    out.push_str("Maximize\n obj:");
    linear(&mut out, &names, instance.variables.iter().enumerate().map(|(k, v)| (k, v.cost())));
    out.push_str("\nSubject To\n");
    // Rows are grouped by family; interleaved linearisation triples are split up.
    for family in RowFamily::ALL {
        let mut rows = instance.rows.iter().filter(|r| r.family == family).peekable();
        if rows.peek().is_none() {
            continue;
        }
        let _ = writeln!(out, "\\ family: {}", family.tag());
        for (ordinal, row) in rows.enumerate() {
            let _ = write!(out, " {}_{}:", family.tag(), ordinal);
            linear(&mut out, &names, row.terms.iter().copied());
            let op = match row.sense {
                Sense::Le => "<=",
                Sense::Ge => ">=",
                Sense::Eq => "=",
            };
            let _ = writeln!(out, " {op} {}", num(row.rhs));
        }
    }
    out.push_str("Bounds\n");
    for (v, name) in instance.variables.iter().zip(&names) {
        if v.kind == VarKind::Binary && v.lower == 0.0 && v.upper == 1.0 {
            continue;
        }
        if v.lower == v.upper {
            let _ = writeln!(out, " {name} = {}", num(v.lower));
        } else {
            let _ = writeln!(out, " {} <= {name} <= {}", num(v.lower), num(v.upper));
        }
    }
    let free_binary = |v: &super::ledger::Variable| v.kind == VarKind::Binary && v.lower == 0.0 && v.upper == 1.0;
    out.push_str("General\n");
    for (v, name) in instance.variables.iter().zip(&names) {
        if v.kind.is_integral() && !free_binary(v) {
            let _ = writeln!(out, " {name}");
        }
    }
    out.push_str("Binary\n");
    for (v, name) in instance.variables.iter().zip(&names) {
        if free_binary(v) {
            let _ = writeln!(out, " {name}");
        }
    }
    out.push_str("End\n");
    out
}

pub fn write_lp<W: Write>(instance: &MilpInstance, mut w: W) -> io::Result<()> {
    w.write_all(to_lp_string(instance).as_bytes())
}
