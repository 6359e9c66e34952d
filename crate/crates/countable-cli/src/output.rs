//! JSON wire formats for `--json` mode.
//!
//! Every arbitrary-precision number crosses the wire as a decimal string so
//! consumers never lose precision to a float. `check` and `compare` emit the
//! library report types directly and have no envelope here.

use countable::diagonal::WitnessReport;
use countable::hotel::{AuditReport, GuestId};
use countable::numbers::DecimalPrefix;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateOut {
    pub set: String,
    pub count: u64,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapOut {
    pub name: String,
    pub inverse: bool,
    pub input: String,
    pub output: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalsListOut {
    pub count: u64,
    pub signed: bool,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalsAtOut {
    pub n: u64,
    pub signed: bool,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalsIndexOut {
    pub value: String,
    pub signed: bool,
    pub index: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalizeOut {
    pub rule: String,
    /// How many entries the input file held.
    pub entries: u64,
    /// Fractional digits of the witness included below.
    pub digits: u64,
    pub witness: DecimalPrefix,
    pub verify: Option<WitnessReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HotelOut {
    pub events: Vec<HotelEvent>,
}

/// One script line's outcome. Room numbers are decimal strings; `arrivals`
/// is a count or "inf" for a countable cohort.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum HotelEvent {
    Arrive {
        cohort: u64,
        arrivals: String,
    },
    Where {
        guest: GuestId,
        room: String,
    },
    Who {
        room: String,
        guest: Option<GuestId>,
    },
    Audit {
        report: AuditReport,
    },
}
