use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemId {
    Kepler5d,
    Osc8d,
    Ycm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Algebraic,
    OdeOracle,
    Duality,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum QuantumNumbers {
    Representation { p: usize },
    Parabolic { n1: usize, n2: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRecord {
    pub system: SystemId,
    pub quantum: QuantumNumbers,
    pub energy: f64,
    pub provenance: Provenance,
    /// m-parameters from the printed relation.
    pub m_printed: Option<(f64, f64)>,
    /// m-parameters fixed by an independent route (structure-function roots or ODE indicial exponents).
    pub m_calibrated: Option<(f64, f64)>,
    pub s: Option<(f64, f64)>,
    pub flags: Vec<String>,
}

impl SpectrumRecord {
    pub fn new(system: SystemId, quantum: QuantumNumbers, energy: f64, provenance: Provenance) -> Self {
        Self { system, quantum, energy, provenance, m_printed: None, m_calibrated: None, s: None, flags: Vec::new() }
    }
}
