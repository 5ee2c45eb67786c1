//! JSON form of strategy certificates.
//!
//! ```json
//! {"game": "entv", "k": 1, "winner": "cops",
//!  "entries": [{"position": "(v=0,C={},Vir={},Cops)", "move": "update keep={} add=true keep-virtual={} place=-"}]}
//! ```
//!
//! Positions and moves use their `Display` forms:
//!
//! * rank game: `(G={0,1},Cops,n=2)`; moves `enter {0,1}`, `remove 3`;
//! * with come back: `(G={0,1},Thief,L=[..],n=1)`, `L` sorted; moves
//!   `forward {..}`, `come-back <position>`, `remove 3`;
//! * entanglement games: `start` or `(v=3,C={1},Vir={2},Thief)`; Thief moves
//!   `goto 3`, Cops moves `skip`, `add`, `replace 2`,
//!   `retire keep={..}`, `retire-add keep={..}`,
//!   `update keep={..} add=<bool> keep-virtual={..} place=<vertex|->`,
//!   `materialize`.

use std::fmt::Display;

use entrank_core::StrategyCertificate;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub position: String,
    #[serde(rename = "move")]
    pub mv: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub game: String,
    pub k: usize,
    pub winner: String,
    pub entries: Vec<Entry>,
}

impl<P: Display, M: Display> From<&StrategyCertificate<P, M>> for CertificateJson {
    fn from(cert: &StrategyCertificate<P, M>) -> Self {
        CertificateJson {
            game: cert.game.name().to_string(),
            k: cert.budget,
            winner: cert.winner.to_string().to_lowercase(),
            entries: cert
                .entries
                .iter()
                .map(|(p, m)| Entry { position: p.to_string(), mv: m.to_string() })
                .collect(),
        }
    }
}

impl CertificateJson {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }
}
