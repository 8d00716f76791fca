//! Static qubit encodings of the nucleobases, their tautomer forms, and the
//! three recognition edges, plus the Hoogsteen-edge readout semantics.
//!
//! Each atom that can hold a shareable proton is one qubit: |1⟩ proton
//! present (donor configuration), |0⟩ absent (acceptor). Edge register
//! widths: Hoogsteen 2, Watson-Crick 3, Sugar 1 or 2 depending on the base.

use crate::error::{Error, Result};
use crate::float::{Real, tol_circuit};
use crate::state::StateVector;
use num_complex::Complex;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Nucleobase {
    A,
    T,
    G,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Purine,
    Pyrimidine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TautomerMark {
    Usual,
    Star,
    Sharp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TautomerForm {
    pub base: Nucleobase,
    pub mark: TautomerMark,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Edge {
    Hoogsteen,
    WatsonCrick,
    Sugar,
}

pub const BASES: [Nucleobase; 4] = [Nucleobase::A, Nucleobase::T, Nucleobase::G, Nucleobase::C];

impl Nucleobase {
    pub fn family(self) -> Family {
        match self {
            Nucleobase::A | Nucleobase::G => Family::Purine,
            Nucleobase::T | Nucleobase::C => Family::Pyrimidine,
        }
    }

    /// Watson-Crick complement; an involution that swaps the families.
    pub fn complement(self) -> Nucleobase {
        match self {
            Nucleobase::A => Nucleobase::T,
            Nucleobase::T => Nucleobase::A,
            Nucleobase::G => Nucleobase::C,
            Nucleobase::C => Nucleobase::G,
        }
    }

    pub fn from_char(c: char) -> Option<Nucleobase> {
        match c.to_ascii_uppercase() {
            'A' => Some(Nucleobase::A),
            'T' => Some(Nucleobase::T),
            'G' => Some(Nucleobase::G),
            'C' => Some(Nucleobase::C),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Nucleobase::A => 'A',
            Nucleobase::T => 'T',
            Nucleobase::G => 'G',
            Nucleobase::C => 'C',
        }
    }

    /// Tautomer marks reachable in the allowed transitions: two forms for A
    /// and T, three for G and C.
    pub fn allowed_marks(self) -> &'static [TautomerMark] {
        match self {
            Nucleobase::A | Nucleobase::T => &[TautomerMark::Usual, TautomerMark::Star],
            Nucleobase::G | Nucleobase::C => {
                &[TautomerMark::Usual, TautomerMark::Star, TautomerMark::Sharp]
            }
        }
    }
}

impl fmt::Display for Nucleobase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl TautomerForm {
    pub fn new(base: Nucleobase, mark: TautomerMark) -> Result<Self> {
        if mark == TautomerMark::Sharp
            && matches!(base, Nucleobase::A | Nucleobase::T)
        {
            return Err(Error::SharpNotAllowed(base));
        }
        Ok(Self { base, mark })
    }

    pub fn usual(base: Nucleobase) -> Self {
        Self { base, mark: TautomerMark::Usual }
    }
}

impl fmt::Display for TautomerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = match self.mark {
            TautomerMark::Usual => "",
            TautomerMark::Star => "*",
            TautomerMark::Sharp => "#",
        };
        write!(f, "{}{}", self.base, mark)
    }
}

/// One row of the encoding table: (form, H code, WC code, S code).
type Row = (Nucleobase, TautomerMark, &'static str, &'static str, &'static str);

/// The ten allowed tautomer forms and their per-edge basis strings, verbatim.
const TABLE: [Row; 10] = [
    (Nucleobase::A, TautomerMark::Usual, "01", "101", "10"),
    (Nucleobase::A, TautomerMark::Star, "00", "011", "10"),
    (Nucleobase::T, TautomerMark::Usual, "10", "010", "0"),
    (Nucleobase::T, TautomerMark::Star, "11", "100", "0"),
    (Nucleobase::G, TautomerMark::Usual, "00", "011", "10"),
    (Nucleobase::G, TautomerMark::Star, "01", "101", "10"),
    (Nucleobase::G, TautomerMark::Sharp, "01", "110", "00"),
    (Nucleobase::C, TautomerMark::Usual, "11", "100", "0"),
    (Nucleobase::C, TautomerMark::Star, "10", "010", "0"),
    (Nucleobase::C, TautomerMark::Sharp, "10", "001", "1"),
];

/// All ten valid tautomer forms in table order.
pub fn all_forms() -> Vec<TautomerForm> {
    TABLE
        .iter()
        .map(|(b, m, _, _, _)| TautomerForm { base: *b, mark: *m })
        .collect()
}

/// The basis string for a (form, edge) pair, verbatim from the table.
/// The Sugar strings have unequal lengths across bases and are never padded.
pub fn encode(form: TautomerForm, edge: Edge) -> Result<&'static str> {
    // Re-validate so a hand-built struct cannot smuggle in A♯/T♯.
    let form = TautomerForm::new(form.base, form.mark)?;
    let row = TABLE
        .iter()
        .find(|(b, m, _, _, _)| *b == form.base && *m == form.mark)
        .expect("all valid forms are in the table");
    Ok(match edge {
        Edge::Hoogsteen => row.2,
        Edge::WatsonCrick => row.3,
        Edge::Sugar => row.4,
    })
}

/// The Watson-Crick register prepared in a form's basis state.
pub fn wc_basis_state<T: Real>(form: TautomerForm) -> Result<StateVector<T>> {
    StateVector::from_bits(encode(form, Edge::WatsonCrick)?)
}

/// What a Hoogsteen-edge readout reveals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HEdgeReadout {
    pub family: Family,
    /// The second bit distinguishes the imino and enol configurations; the
    /// direction of that assignment is left open, so only the raw bit is
    /// reported.
    pub imino_enol_bit: u8,
    /// Every tautomer form whose H-edge code equals the input.
    pub matches: Vec<TautomerForm>,
}

/// Decode a 2-bit Hoogsteen code: first bit 0 ⇒ purine, 1 ⇒ pyrimidine.
pub fn h_edge_readout(code: &str) -> Result<HEdgeReadout> {
    if code.len() != 2 || !code.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::BadBasisString(code.to_string()));
    }
    let family = if code.as_bytes()[0] == b'0' {
        Family::Purine
    } else {
        Family::Pyrimidine
    };
    let matches = TABLE
        .iter()
        .filter(|(_, _, h, _, _)| *h == code)
        .map(|(b, m, _, _, _)| TautomerForm { base: *b, mark: *m })
        .collect();
    Ok(HEdgeReadout {
        family,
        imino_enol_bit: code.as_bytes()[1] - b'0',
        matches,
    })
}

/// Two Hoogsteen codes can pair iff they are bitwise complementary. This
/// admits the correct pairings and the known mispairings alike.
pub fn pairable(code1: &str, code2: &str) -> Result<bool> {
    if code1.len() != 2 || code2.len() != 2 {
        return Err(Error::BadBasisString(format!("{code1}/{code2}")));
    }
    for (a, b) in code1.bytes().zip(code2.bytes()) {
        if !(a == b'0' || a == b'1') || !(b == b'0' || b == b'1') {
            return Err(Error::BadBasisString(format!("{code1}/{code2}")));
        }
        if a == b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Complex tautomer amplitudes for one base, e.g. (a, a*) or (g, g*, g♯).
#[derive(Clone, Debug)]
pub struct TautomerAmplitudes<T: Real> {
    pub base: Nucleobase,
    pub amps: Vec<(TautomerMark, Complex<T>)>,
}

impl<T: Real> TautomerAmplitudes<T> {
    pub fn new(base: Nucleobase, amps: Vec<(TautomerMark, Complex<T>)>) -> Result<Self> {
        let allowed = base.allowed_marks();
        if amps.len() != allowed.len()
            || !amps.iter().zip(allowed).all(|((m, _), a)| m == a)
        {
            return Err(Error::BadBasisString(format!(
                "tautomer amplitudes for {base} must cover exactly {allowed:?}"
            )));
        }
        let norm: T = amps
            .iter()
            .map(|(_, c)| c.norm_sqr())
            .fold(T::zero(), |x, y| x + y);
        if (norm - T::one()).abs() > tol_circuit::<T>() {
            return Err(Error::NotNormalized {
                norm_sqr: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { base, amps })
    }

    /// The Watson-Crick state Σ_t α_t |N^t⟩.
    pub fn state(&self) -> Result<StateVector<T>> {
        let mut acc = vec![num_complex::Complex::new(T::zero(), T::zero()); 8];
        for (mark, amp) in &self.amps {
            let form = TautomerForm::new(self.base, *mark)?;
            let basis = wc_basis_state::<T>(form)?;
            for (i, b) in basis.amplitudes().iter().enumerate() {
                acc[i] = acc[i] + *amp * *b;
            }
        }
        StateVector::from_amplitudes(3, acc)
    }
}

/// Machine-readable export of the full encoding table.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogueRow {
    pub base: Nucleobase,
    pub mark: TautomerMark,
    pub family: Family,
    pub hoogsteen: &'static str,
    pub watson_crick: &'static str,
    pub sugar: &'static str,
}

pub fn catalogue() -> Vec<CatalogueRow> {
    TABLE
        .iter()
        .map(|(b, m, h, wc, s)| CatalogueRow {
            base: *b,
            mark: *m,
            family: b.family(),
            hoogsteen: h,
            watson_crick: wc,
            sugar: s,
        })
        .collect()
}
