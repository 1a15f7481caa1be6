//! Error classification and exit codes.

use kacdt_core::bps::BpsError;
use kacdt_core::charser::CharError;
use kacdt_core::fqrep::FqError;
use kacdt_core::kac::KacError;
use kacdt_core::ncpot::PotentialError;
use kacdt_core::quiver::QuiverError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Oracle(#[from] FqError),
    #[error(transparent)]
    Kac(#[from] KacError),
    #[error(transparent)]
    Bps(#[from] BpsError),
    #[error(transparent)]
    Character(#[from] CharError),
    #[error("{0}")]
    CheckFailed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Input,
    Capacity,
    Internal,
}

impl Kind {
    pub fn exit_code(self) -> i32 {
        match self {
            Kind::Input => 2,
            Kind::Capacity => 3,
            Kind::Internal => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Kind::Input => "input",
            Kind::Capacity => "capacity",
            Kind::Internal => "internal",
        }
    }
}

fn oracle_kind(e: &FqError) -> Kind {
    match e {
        FqError::CapExceeded { .. } | FqError::Overflow(_) => Kind::Capacity,
        FqError::Quiver(_)
        | FqError::NotPrime(_)
        | FqError::Shape { .. }
        | FqError::MatrixCount { .. } => Kind::Input,
        FqError::PrimeMismatch(..) | FqError::QuiverMismatch => Kind::Internal,
    }
}

fn kac_kind(e: &KacError) -> Kind {
    match e {
        KacError::Quiver(_) | KacError::ZeroDimension | KacError::Cache(_) => Kind::Input,
        KacError::Oracle(o) => oracle_kind(o),
        KacError::Character(_)
        | KacError::Unstable { .. }
        | KacError::NonInteger(_)
        | KacError::Negative(_)
        | KacError::Overflow(_) => Kind::Internal,
    }
}

impl CliError {
    pub fn kind(&self) -> Kind {
        match self {
            CliError::Input(_) | CliError::Quiver(_) | CliError::Potential(_) => Kind::Input,
            CliError::Oracle(e) => oracle_kind(e),
            CliError::Kac(e) => kac_kind(e),
            CliError::Bps(e) => match e {
                BpsError::Kac(k) => kac_kind(k),
                BpsError::Character(_) => Kind::Internal,
                _ => Kind::Input,
            },
            CliError::Character(_) | CliError::CheckFailed(_) => Kind::Internal,
        }
    }

    /// `{"error": {"kind": …, "detail": …}}`, plus the required size for
    /// capacity errors.
    pub fn to_json(&self) -> Value {
        let mut body = json!({"kind": self.kind().name(), "detail": self.to_string()});
        if let Some(FqError::CapExceeded {
            what,
            required,
            cap,
        }) = self.cap_exceeded()
        {
            body["what"] = json!(what);
            body["required"] = json!(required);
            body["cap"] = json!(cap);
        }
        json!({ "error": body })
    }

    fn cap_exceeded(&self) -> Option<&FqError> {
        let fq = match self {
            CliError::Oracle(e) => e,
            CliError::Kac(KacError::Oracle(e))
            | CliError::Bps(BpsError::Kac(KacError::Oracle(e))) => e,
            _ => return None,
        };
        matches!(fq, FqError::CapExceeded { .. }).then_some(fq)
    }
}
