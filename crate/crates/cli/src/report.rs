//! JSON reports and error classification.

use cyltor_core::Error;
use serde_json::{json, Map, Value};

use crate::Global;

pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(argv: &[String], global: &Global) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!({ "argv": argv }));
        fields.insert(
            "settings".into(),
            json!({
                "mode": global.mode.name(),
                "depth": global.depth,
                "samples": global.samples,
                "seed": global.seed,
            }),
        );
        if let Some(sig) = global.surface {
            fields.insert("surface".into(), json!([sig.genus, sig.boundary_components]));
        }
        Report { fields }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.into(), value.into());
    }

    pub fn fail(&mut self, failure: Failure) {
        self.fields.insert(
            "error".into(),
            json!({ "kind": failure.kind(), "message": failure.message() }),
        );
    }

    pub fn render(&self, pretty: bool) -> String {
        if !pretty {
            return Value::Object(self.fields.clone()).to_string();
        }
        self.fields
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Either a usage problem (exit 1) or a mathematical rejection (exit 2).
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Math(Error),
}

impl Failure {
    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Math(e) => e.to_string(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Math(_) => "rejected",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Math(_) => 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::InvalidArgument(_)
            | Error::Descriptor(_)
            | Error::DimensionMismatch { .. }
            | Error::SignatureMismatch { .. } => Failure::Usage(e.to_string()),
            other => Failure::Math(other),
        }
    }
}
