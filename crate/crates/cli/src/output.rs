use std::io::{self, Write};

/// A single named field of an output record.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_owned())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Null, Into::into)
    }
}

/// Formats `x` with 17 significant digits, `%.17g` style: fixed notation for
/// decimal exponents in `[-5, 17)`, scientific otherwise, trailing zeros
/// removed. Every finite `f64` survives a parse round trip unchanged.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        trim_zeros(&fixed).to_owned()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl Value {
    fn json(&self) -> String {
        match self {
            Value::Num(x) => fmt_g17(*x),
            Value::Text(s) => serde_json::to_string(s).expect("string serializes"),
            Value::Bool(b) => b.to_string(),
            Value::Null => "null".into(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Value::Num(x) => fmt_g17(*x),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Null => String::new(),
        }
    }
}

/// Output format selected with `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One command result: the command name, the inputs it was given and the
/// named outputs it produced, emitted as one flat object or one CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Vec<(String, Value)>,
    pub outputs: Vec<(String, Value)>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), inputs: Vec::new(), outputs: Vec::new() }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        debug_assert!(!self.has_key(key), "duplicate key {key}");
        self.inputs.push((key.into(), value.into()));
        self
    }

    pub fn output(mut self, key: &str, value: impl Into<Value>) -> Self {
        debug_assert!(!self.has_key(key), "duplicate key {key}");
        self.outputs.push((key.into(), value.into()));
        self
    }

    fn has_key(&self, key: &str) -> bool {
        key == "command" || self.inputs.iter().chain(&self.outputs).any(|(k, _)| k == key)
    }

    fn fields(&self) -> impl Iterator<Item = &(String, Value)> {
        self.inputs.iter().chain(&self.outputs)
    }

    pub fn to_json(&self) -> String {
        let mut s = format!("{{\"command\":{}", Value::Text(self.command.clone()).json());
        for (k, v) in self.fields() {
            s.push(',');
            s.push_str(&serde_json::to_string(k).expect("string serializes"));
            s.push(':');
            s.push_str(&v.json());
        }
        s.push('}');
        s
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.to_json()),
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
                let header: Vec<&str> =
                    std::iter::once("command").chain(self.fields().map(|(k, _)| k.as_str())).collect();
                w.write_record(&header)?;
                let row: Vec<String> =
                    std::iter::once(self.command.clone()).chain(self.fields().map(|(_, v)| v.csv())).collect();
                w.write_record(&row)?;
                w.flush()
            }
        }
    }
}

/// Writes a table row by row, flushing after each one.
pub struct RowWriter<W: Write> {
    out: W,
    format: Format,
    columns: Vec<String>,
}

impl<W: Write> RowWriter<W> {
    pub fn new(mut out: W, format: Format, columns: &[&str]) -> io::Result<Self> {
        if format == Format::Csv {
            writeln!(out, "{}", columns.join(","))?;
            out.flush()?;
        }
        Ok(Self { out, format, columns: columns.iter().map(|c| c.to_string()).collect() })
    }

    pub fn row(&mut self, values: &[f64]) -> io::Result<()> {
        debug_assert_eq!(values.len(), self.columns.len());
        match self.format {
            Format::Csv => {
                let cells: Vec<String> = values.iter().map(|&x| fmt_g17(x)).collect();
                writeln!(self.out, "{}", cells.join(","))?;
            }
            Format::Json => {
                let fields: Vec<String> = self
                    .columns
                    .iter()
                    .zip(values)
                    .map(|(k, &x)| format!("{}:{}", serde_json::to_string(k).expect("string serializes"), fmt_g17(x)))
                    .collect();
                writeln!(self.out, "{{{}}}", fields.join(","))?;
            }
        }
        self.out.flush()
    }
}
