//! Deterministic machine-readable output: JSON with a fixed field order and
//! CSV rows. Floating-point values are printed with 17 significant digits
//! (`%.16e`), which round-trips `f64` exactly.

/// 17-significant-digit float, round-trip exact.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Incremental JSON writer preserving insertion order, two-space indent.
pub struct JsonWriter {
    buf: String,
    indent: usize,
    need_comma: Vec<bool>,
}

impl JsonWriter {
    pub fn new() -> Self {
        Self {
            buf: String::new(),
            indent: 0,
            need_comma: Vec::new(),
        }
    }

    fn newline_item(&mut self) {
        if let Some(top) = self.need_comma.last_mut() {
            if *top {
                self.buf.push(',');
            }
            *top = true;
        }
        if !self.buf.is_empty() {
            self.buf.push('\n');
        }
        for _ in 0..self.indent {
            self.buf.push_str("  ");
        }
    }

    fn key(&mut self, key: Option<&str>) {
        self.newline_item();
        if let Some(k) = key {
            self.buf.push('"');
            self.buf.push_str(&escape_json(k));
            self.buf.push_str("\": ");
        }
    }

    pub fn open_object(&mut self, key: Option<&str>) {
        self.key(key);
        self.buf.push('{');
        self.indent += 1;
        self.need_comma.push(false);
    }

    pub fn close_object(&mut self) {
        self.indent -= 1;
        self.need_comma.pop();
        self.buf.push('\n');
        for _ in 0..self.indent {
            self.buf.push_str("  ");
        }
        self.buf.push('}');
    }

    pub fn open_array(&mut self, key: Option<&str>) {
        self.key(key);
        self.buf.push('[');
        self.indent += 1;
        self.need_comma.push(false);
    }

    pub fn close_array(&mut self) {
        self.indent -= 1;
        self.need_comma.pop();
        self.buf.push('\n');
        for _ in 0..self.indent {
            self.buf.push_str("  ");
        }
        self.buf.push(']');
    }

    pub fn string(&mut self, key: &str, value: &str) {
        self.key(Some(key));
        self.buf.push('"');
        self.buf.push_str(&escape_json(value));
        self.buf.push('"');
    }

    pub fn float(&mut self, key: &str, value: f64) {
        self.key(Some(key));
        self.buf.push_str(&fmt_f64(value));
    }

    pub fn optional_float(&mut self, key: &str, value: Option<f64>) {
        self.key(Some(key));
        match value {
            Some(v) => self.buf.push_str(&fmt_f64(v)),
            None => self.buf.push_str("null"),
        }
    }

    pub fn integer(&mut self, key: &str, value: u64) {
        self.key(Some(key));
        self.buf.push_str(&value.to_string());
    }

    pub fn finish(mut self) -> String {
        self.buf.push('\n');
        self.buf
    }
}

/// One CSV line; `None` renders as an empty field.
pub fn csv_row(fields: &[Option<String>]) -> String {
    fields
        .iter()
        .map(|f| f.clone().unwrap_or_default())
        .collect::<Vec<_>>()
        .join(",")
}

/// Metadata shared by every report, in fixed order.
#[derive(Debug, Clone)]
pub struct Metadata {
    pub command: String,
    pub units: String,
    pub seed: u64,
    pub potential: Option<String>,
    pub morse_index: Option<f64>,
    pub mass: Option<f64>,
    pub hbar: Option<f64>,
    pub grid: Option<String>,
}

impl Metadata {
    pub fn write(&self, w: &mut JsonWriter) {
        w.open_object(Some("metadata"));
        w.string("command", &self.command);
        w.string("units", &self.units);
        w.integer("seed", self.seed);
        if let Some(p) = &self.potential {
            w.string("potential", p);
        }
        if let Some(v) = self.morse_index {
            w.float("morse_index", v);
        }
        if let Some(m) = self.mass {
            w.float("mass", m);
        }
        if let Some(h) = self.hbar {
            w.float("hbar", h);
        }
        if let Some(g) = &self.grid {
            w.string("grid", g);
        }
        w.string("version", env!("CARGO_PKG_VERSION"));
        w.close_object();
    }
}

/// Per-level record of a spectrum report; optional columns stay empty when
/// the producing command does not compute them.
#[derive(Debug, Clone, Copy)]
pub struct LevelRow {
    pub n: u32,
    pub e_semiclassical: Option<f64>,
    pub e_oracle: Option<f64>,
    pub e_closed_form: Option<f64>,
    pub abs_diff: Option<f64>,
    pub rel_diff: Option<f64>,
    pub residual: Option<f64>,
}

pub const LEVEL_COLUMNS: &str =
    "n,e_semiclassical,e_oracle,e_closed_form,abs_diff,rel_diff,residual";

/// A full spectrum report (quantize, oracle, compare).
pub struct SpectrumReport {
    pub metadata: Metadata,
    pub levels: Vec<LevelRow>,
}

impl SpectrumReport {
    pub fn to_json(&self) -> String {
        let mut w = JsonWriter::new();
        w.open_object(None);
        w.string("schema", "cyclequant.spectrum_report.v1");
        self.metadata.write(&mut w);
        w.open_array(Some("levels"));
        for row in &self.levels {
            w.open_object(None);
            w.integer("n", row.n as u64);
            w.optional_float("e_semiclassical", row.e_semiclassical);
            w.optional_float("e_oracle", row.e_oracle);
            w.optional_float("e_closed_form", row.e_closed_form);
            w.optional_float("abs_diff", row.abs_diff);
            w.optional_float("rel_diff", row.rel_diff);
            w.optional_float("residual", row.residual);
            w.close_object();
        }
        w.close_array();
        w.close_object();
        w.finish()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(LEVEL_COLUMNS);
        out.push('\n');
        for row in &self.levels {
            out.push_str(&csv_row(&[
                Some(row.n.to_string()),
                row.e_semiclassical.map(fmt_f64),
                row.e_oracle.map(fmt_f64),
                row.e_closed_form.map(fmt_f64),
                row.abs_diff.map(fmt_f64),
                row.rel_diff.map(fmt_f64),
                row.residual.map(fmt_f64),
            ]));
            out.push('\n');
        }
        out
    }
}
