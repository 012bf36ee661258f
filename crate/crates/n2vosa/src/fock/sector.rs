use std::collections::HashMap;
use std::fmt;

use super::mode::{weight_of, Charge, Grade, ModeKey, Monomial, State};
use super::spec::{FlavorBasis, SectorSpec, SlotSpec, Species, Twist};
use crate::scalar::{CycScalar, Rational};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
enum SlotKind {
    Boson { charged: bool },
    KappaBoson,
    Fermion,
    SigmaFermion,
    ChargedFermion { theta: Rational },
}

/// A mode of one basis vector of one slot, before choosing an index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseMode {
    pub slot: u8,
    pub charge: Charge,
    pub flavor: u8,
}

/// Which component of 𝔥 (or 𝔥 ⊕ 𝔥) a logical field is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    /// α_(copy), copy ∈ {1, 2}
    Ortho(u8),
    /// α^± = (α_(1) ∓ iα_(2))/√2
    Charged(bool),
}

/// A field as a linear combination of base modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    pub parts: Vec<(BaseMode, CycScalar)>,
    pub species: Species,
    pub name: String,
}

impl Field {
    pub fn is_odd(&self) -> bool {
        self.species == Species::Fermion
    }

    /// Conformal weight of the generating state.
    pub fn weight(&self) -> Rational {
        match self.species {
            Species::Boson => Rational::one(),
            Species::Fermion => Rational::new(1, 2),
        }
    }

    pub fn scaled(&self, c: &CycScalar) -> Field {
        Field {
            parts: self.parts.iter().map(|(b, x)| (*b, x * c)).collect(),
            species: self.species,
            name: self.name.clone(),
        }
    }
}

enum Action {
    Zero,
    Create(ModeKey),
    Annihilate(ModeKey, Rational),
    Clifford(ModeKey),
}

/// A concrete Fock space: validated slots, mode supports and the exact
/// creation/annihilation action.
#[derive(Clone, Debug)]
pub struct Sector {
    spec: SectorSpec,
    kinds: Vec<SlotKind>,
    fermionic: Vec<bool>,
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn in_coset(x: &Rational, offset: &Rational) -> bool {
    (x - offset).is_integer()
}

impl Sector {
    pub fn new(spec: SectorSpec) -> Result<Self, Error> {
        if spec.d == 0 || spec.d > 64 {
            return Err(Error::Invalid(format!("d must be between 1 and 64, got {}", spec.d)));
        }
        if spec.slots.is_empty() || spec.slots.len() > 16 {
            return Err(Error::Invalid("a sector needs between 1 and 16 slots".into()));
        }
        let mut kinds = Vec::new();
        for (i, s) in spec.slots.iter().enumerate() {
            let kind = match (s.species, s.twist, s.flavor_basis) {
                (Species::Boson, Twist::Untwisted, FlavorBasis::Orthonormal) => SlotKind::Boson { charged: false },
                (Species::Boson, Twist::Untwisted, FlavorBasis::Charged) => SlotKind::Boson { charged: true },
                (Species::Boson, Twist::Kappa, FlavorBasis::Orthonormal) => SlotKind::KappaBoson,
                (Species::Fermion, Twist::Untwisted, FlavorBasis::Orthonormal) => SlotKind::Fermion,
                (Species::Fermion, Twist::Untwisted, FlavorBasis::Charged) => {
                    SlotKind::ChargedFermion { theta: Rational::zero() }
                }
                (Species::Fermion, Twist::Sigma, FlavorBasis::Polarized) => SlotKind::SigmaFermion,
                (Species::Fermion, Twist::SigmaXi { j, k }, FlavorBasis::Charged) => {
                    if k <= 0 {
                        return Err(Error::Invalid(format!("slot {i}: k must be positive")));
                    }
                    let theta = Rational::new(j, k).fract();
                    if theta == half() {
                        return Err(Error::Invalid(format!(
                            "slot {i}: j/k = 1/2 mod 1 gives fermionic zero modes; use the sigma twist"
                        )));
                    }
                    SlotKind::ChargedFermion { theta }
                }
                other => return Err(Error::Invalid(format!("slot {i}: unsupported combination {other:?}"))),
            };
            let charged = s.flavor_basis == FlavorBasis::Charged;
            if charged != (s.copy == 0) || s.copy > 2 {
                return Err(Error::Invalid(format!(
                    "slot {i}: charged slots use copy 0, other slots copy 1 or 2 (got {})",
                    s.copy
                )));
            }
            kinds.push(kind);
        }
        let fermionic = spec.slots.iter().map(|s| s.species == Species::Fermion).collect();
        Ok(Sector { spec, kinds, fermionic })
    }

    pub fn spec(&self) -> &SectorSpec {
        &self.spec
    }

    pub fn d(&self) -> u32 {
        self.spec.d
    }

    pub fn slot(&self, i: usize) -> &SlotSpec {
        &self.spec.slots[i]
    }

    pub fn slot_count(&self) -> usize {
        self.spec.slots.len()
    }

    /// Number of β₊/β₋ pairs in a polarized slot.
    pub fn polarized_pairs(&self) -> u32 {
        self.spec.d / 2
    }

    pub fn is_fermionic_slot(&self, slot: u8) -> bool {
        self.fermionic[slot as usize]
    }

    /// Offset o with the mode indices of `mode` in o + ℤ.
    pub fn support(&self, mode: &BaseMode) -> Rational {
        match &self.kinds[mode.slot as usize] {
            SlotKind::Boson { .. } | SlotKind::SigmaFermion => Rational::zero(),
            SlotKind::KappaBoson | SlotKind::Fermion => half(),
            SlotKind::ChargedFermion { theta } => match mode.charge {
                Charge::Plus => (&half() + theta).fract(),
                _ => (&half() - theta).fract(),
            },
        }
    }

    fn support_text(&self, mode: &BaseMode) -> String {
        let o = self.support(mode);
        if o.is_zero() {
            "Z".into()
        } else {
            format!("Z+{o}")
        }
    }

    fn check_base(&self, mode: &BaseMode) -> Result<(), Error> {
        let slot = mode.slot as usize;
        if slot >= self.kinds.len() {
            return Err(Error::Invalid(format!("slot {slot} out of range")));
        }
        let d = self.spec.d as u8;
        let l = self.polarized_pairs() as u8;
        let ok = match (&self.kinds[slot], mode.charge) {
            (SlotKind::Boson { charged: false } | SlotKind::KappaBoson | SlotKind::Fermion, Charge::Plain) => {
                (1..=d).contains(&mode.flavor)
            }
            (SlotKind::Boson { charged: true } | SlotKind::ChargedFermion { .. }, Charge::Plus | Charge::Minus) => {
                (1..=d).contains(&mode.flavor)
            }
            (SlotKind::SigmaFermion, Charge::Plus | Charge::Minus) => (1..=l).contains(&mode.flavor),
            (SlotKind::SigmaFermion, Charge::Epsilon) => d % 2 == 1 && mode.flavor == 1,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("no basis vector {mode:?} in slot {slot}")))
        }
    }

    fn action(&self, mode: &BaseMode, index: &Rational) -> Result<Action, Error> {
        self.check_base(mode)?;
        if !in_coset(index, &self.support(mode)) {
            return Err(Error::UnsupportedMode {
                symbol: format!("{mode:?}({index})"),
                support: self.support_text(mode),
            });
        }
        let key = |charge: Charge, grade: &Rational| ModeKey::new(mode.slot, charge, mode.flavor, grade);
        let g = -index;
        let kind = &self.kinds[mode.slot as usize];
        let partner = |c: Charge| match (kind, c) {
            (SlotKind::Boson { charged: false } | SlotKind::KappaBoson | SlotKind::Fermion, c) => c,
            (_, Charge::Plus) => Charge::Minus,
            (_, Charge::Minus) => Charge::Plus,
            (_, c) => c,
        };
        Ok(if index.is_negative() {
            Action::Create(key(mode.charge, &g)?)
        } else if index.is_positive() {
            let pairing = if mode.charge == Charge::Epsilon { Rational::from_int(2) } else { Rational::one() };
            let factor = if self.fermionic[mode.slot as usize] { pairing } else { &pairing * index };
            Action::Annihilate(key(partner(mode.charge), index)?, factor)
        } else {
            match (kind, mode.charge) {
                (SlotKind::SigmaFermion, Charge::Plus) => Action::Create(key(Charge::Plus, &g)?),
                (SlotKind::SigmaFermion, Charge::Minus) => {
                    Action::Annihilate(key(Charge::Plus, &g)?, Rational::one())
                }
                (SlotKind::SigmaFermion, Charge::Epsilon) => Action::Clifford(key(Charge::Epsilon, &g)?),
                _ => Action::Zero,
            }
        })
    }

    fn fermions_before(&self, m: &Monomial, pos: usize) -> usize {
        m.0[..pos].iter().filter(|(k, _)| self.fermionic[k.slot as usize]).count()
    }

    fn sign(n: usize) -> Rational {
        if n.is_multiple_of(2) {
            Rational::one()
        } else {
            Rational::from_int(-1)
        }
    }

    /// `mode(index)` applied to a monomial: the image monomial and its
    /// coefficient, or `None` for zero.
    pub fn apply_base(
        &self,
        mode: &BaseMode,
        index: &Rational,
        m: &Monomial,
    ) -> Result<Option<(Monomial, Rational)>, Error> {
        let fermionic = self.fermionic[mode.slot as usize];
        Ok(match self.action(mode, index)? {
            Action::Zero => None,
            Action::Create(key) => {
                let pos = m.0.binary_search_by(|(k, _)| k.cmp(&key));
                let mut out = m.clone();
                match pos {
                    Ok(i) => {
                        if fermionic {
                            return Ok(None);
                        }
                        out.0[i].1 += 1;
                        Some((out, Rational::one()))
                    }
                    Err(i) => {
                        let s = if fermionic { Self::sign(self.fermions_before(m, i)) } else { Rational::one() };
                        out.0.insert(i, (key, 1));
                        Some((out, s))
                    }
                }
            }
            Action::Annihilate(key, factor) => match m.0.binary_search_by(|(k, _)| k.cmp(&key)) {
                Err(_) => None,
                Ok(i) => {
                    let mut out = m.clone();
                    let mult = out.0[i].1;
                    let c = if fermionic {
                        &factor * &Self::sign(self.fermions_before(m, i))
                    } else {
                        &factor * &Rational::from_int(mult as i64)
                    };
                    if mult == 1 {
                        out.0.remove(i);
                    } else {
                        out.0[i].1 -= 1;
                    }
                    Some((out, c))
                }
            },
            Action::Clifford(key) => {
                let mut out = m.clone();
                match m.0.binary_search_by(|(k, _)| k.cmp(&key)) {
                    Ok(i) => {
                        out.0.remove(i);
                        Some((out, Self::sign(self.fermions_before(m, i))))
                    }
                    Err(i) => {
                        out.0.insert(i, (key, 1));
                        Some((out, Self::sign(self.fermions_before(m, i))))
                    }
                }
            }
        })
    }

    pub fn apply_mode(&self, mode: &BaseMode, index: &Rational, s: &State) -> Result<State, Error> {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            if let Some((m2, x)) = self.apply_base(mode, index, m)? {
                out.add_term(m2, &c.scale(&x));
            }
        }
        Ok(out)
    }

    /// Field mode applied to a monomial.
    pub fn apply_field_mono(&self, field: &Field, index: &Rational, m: &Monomial) -> Result<State, Error> {
        let mut out = State::zero();
        for (b, c) in &field.parts {
            if let Some((m2, x)) = self.apply_base(b, index, m)? {
                out.add_term(m2, &c.scale(&x));
            }
        }
        Ok(out)
    }

    pub fn apply_field(&self, field: &Field, index: &Rational, s: &State) -> Result<State, Error> {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            out.add_scaled(&self.apply_field_mono(field, index, m)?, c);
        }
        Ok(out)
    }

    /// Mode support of a field, if all parts agree.
    pub fn field_support(&self, field: &Field) -> Result<Rational, Error> {
        let mut it = field.parts.iter().map(|(b, _)| self.support(b));
        let first = it.next().ok_or_else(|| Error::Invalid("empty field".into()))?;
        if it.all(|o| o == first) {
            Ok(first)
        } else {
            Err(Error::Invalid("field mixes mode supports".into()))
        }
    }

    fn slots_matching(&self, species: Species, pred: impl Fn(&SlotSpec) -> bool) -> Vec<usize> {
        (0..self.spec.slots.len())
            .filter(|&i| self.spec.slots[i].species == species && pred(&self.spec.slots[i]))
            .collect()
    }

    /// Resolves α_(copy)^{(j)} or α^{(j),±} of the given species to base modes.
    pub fn field(&self, species: Species, comp: Component, flavor: u8) -> Result<Field, Error> {
        let d = self.spec.d as u8;
        if !(1..=d).contains(&flavor) {
            return Err(Error::Invalid(format!("flavor {flavor} outside 1..={d}")));
        }
        let one = CycScalar::one();
        let s2 = CycScalar::sqrt2().inv()?;
        let i = CycScalar::i();
        let parts = match comp {
            Component::Ortho(copy) => {
                let direct = self.slots_matching(species, |s| s.copy == copy);
                let charged = self.slots_matching(species, |s| s.copy == 0);
                if let Some(&slot) = direct.first() {
                    let slot8 = slot as u8;
                    match &self.kinds[slot] {
                        SlotKind::SigmaFermion => {
                            let l = self.polarized_pairs() as u8;
                            let bm = |c, f| BaseMode { slot: slot8, charge: c, flavor: f };
                            if flavor <= l {
                                vec![(bm(Charge::Plus, flavor), s2.clone()), (bm(Charge::Minus, flavor), s2.clone())]
                            } else if flavor <= 2 * l {
                                let c = &-&i * &s2;
                                vec![(bm(Charge::Plus, flavor - l), c.clone()), (bm(Charge::Minus, flavor - l), -&c)]
                            } else {
                                vec![(bm(Charge::Epsilon, 1), s2.clone())]
                            }
                        }
                        _ => vec![(BaseMode { slot: slot8, charge: Charge::Plain, flavor }, one)],
                    }
                } else if let Some(&slot) = charged.first() {
                    let slot8 = slot as u8;
                    let p = BaseMode { slot: slot8, charge: Charge::Plus, flavor };
                    let m = BaseMode { slot: slot8, charge: Charge::Minus, flavor };
                    match copy {
                        1 => vec![(p, s2.clone()), (m, s2.clone())],
                        2 => vec![(p, &i * &s2), (m, -&(&i * &s2))],
                        _ => return Err(Error::Invalid(format!("copy must be 1 or 2, got {copy}"))),
                    }
                } else {
                    return Err(Error::Undefined(format!("no {species:?} slot for copy {copy}")));
                }
            }
            Component::Charged(plus) => {
                let charged = self.slots_matching(species, |s| s.copy == 0);
                if let Some(&slot) = charged.first() {
                    let charge = if plus { Charge::Plus } else { Charge::Minus };
                    vec![(BaseMode { slot: slot as u8, charge, flavor }, one)]
                } else {
                    let a1 = self.field(species, Component::Ortho(1), flavor)?;
                    let a2 = self.field(species, Component::Ortho(2), flavor)?;
                    let c2 = if plus { -&(&i * &s2) } else { &i * &s2 };
                    let mut parts = a1.scaled(&s2).parts;
                    parts.extend(a2.scaled(&c2).parts);
                    parts
                }
            }
        };
        let sp = match species {
            Species::Boson => "b",
            Species::Fermion => "f",
        };
        let name = match comp {
            Component::Ortho(c) => format!("a{flavor}_({c}){sp}"),
            Component::Charged(true) => format!("a{flavor}+{sp}"),
            Component::Charged(false) => format!("a{flavor}-{sp}"),
        };
        Ok(Field { parts, species, name })
    }

    /// Creation keys of one (slot, charge, flavor) with grade ≤ max.
    fn creation_grades(&self, slot: usize, charge: Charge, max: &Rational) -> Vec<Rational> {
        let mode = BaseMode { slot: slot as u8, charge, flavor: 1 };
        let offset = (-&self.support(&mode)).fract();
        let zero_allowed = matches!(self.kinds[slot], SlotKind::SigmaFermion)
            && matches!(charge, Charge::Plus | Charge::Epsilon);
        let mut g = offset;
        if g.is_zero() && !zero_allowed {
            g = Rational::one();
        }
        let mut out = Vec::new();
        while &g <= max {
            out.push(g.clone());
            g = &g + &Rational::one();
        }
        out
    }

    /// All creation keys of grade ≤ max, canonically ordered.
    pub fn creation_keys(&self, max: &Rational) -> Vec<ModeKey> {
        let d = self.spec.d as u8;
        let mut keys = Vec::new();
        for (slot, kind) in self.kinds.iter().enumerate() {
            let families: Vec<(Charge, u8)> = match kind {
                SlotKind::Boson { charged: false } | SlotKind::KappaBoson | SlotKind::Fermion => {
                    (1..=d).map(|f| (Charge::Plain, f)).collect()
                }
                SlotKind::Boson { charged: true } | SlotKind::ChargedFermion { .. } => {
                    (1..=d).flat_map(|f| [(Charge::Plus, f), (Charge::Minus, f)]).collect()
                }
                SlotKind::SigmaFermion => {
                    let l = self.polarized_pairs() as u8;
                    let mut v: Vec<_> = (1..=l).flat_map(|f| [(Charge::Plus, f), (Charge::Minus, f)]).collect();
                    if d % 2 == 1 {
                        v.push((Charge::Epsilon, 1));
                    }
                    v
                }
            };
            for (charge, flavor) in families {
                for g in self.creation_grades(slot, charge, max) {
                    keys.push(ModeKey { slot: slot as u8, charge, flavor, grade: Grade::try_from(&g).unwrap() });
                }
            }
        }
        keys.sort();
        keys
    }

    /// All canonical monomials of intrinsic weight ≤ max_weight, ordered by
    /// weight and then canonically.
    pub fn enumerate_basis(&self, max_weight: &Rational) -> Vec<Monomial> {
        let keys = self.creation_keys(max_weight);
        let grades: Vec<Rational> = keys.iter().map(|k| k.grade()).collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate_rec(&keys, &grades, 0, max_weight.clone(), &mut cur, &mut out);
        let mut weighted: Vec<(Rational, Monomial)> = out.into_iter().map(|m| (weight_of(&m), m)).collect();
        weighted.sort();
        weighted.into_iter().map(|(_, m)| m).collect()
    }

    fn enumerate_rec(
        &self,
        keys: &[ModeKey],
        grades: &[Rational],
        i: usize,
        budget: Rational,
        cur: &mut Vec<(ModeKey, u16)>,
        out: &mut Vec<Monomial>,
    ) {
        if i == keys.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        self.enumerate_rec(keys, grades, i + 1, budget.clone(), cur, out);
        let max_mult: u16 = if self.fermionic[keys[i].slot as usize] { 1 } else { u16::MAX };
        let mut rest = budget;
        let mut e = 0u16;
        while e < max_mult {
            rest = &rest - &grades[i];
            if rest.is_negative() {
                break;
            }
            e += 1;
            cur.push((keys[i], e));
            self.enumerate_rec(keys, grades, i + 1, rest.clone(), cur, out);
            cur.pop();
        }
    }

    pub fn parity(&self, m: &Monomial) -> bool {
        m.0.iter().filter(|(k, _)| self.fermionic[k.slot as usize]).map(|(_, e)| *e as usize).sum::<usize>() % 2 == 1
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .spec
            .slots
            .iter()
            .map(|s| {
                let sp = match s.species {
                    Species::Boson => "bos",
                    Species::Fermion => "fer",
                };
                let tw = match s.twist {
                    Twist::Untwisted => String::new(),
                    Twist::Sigma => "[sigma]".into(),
                    Twist::Kappa => "[kappa]".into(),
                    Twist::SigmaXi { j, k } => format!("[sigma_xi {j}/{k}]"),
                };
                format!("{sp}{tw}")
            })
            .collect();
        write!(f, "{} (d = {})", parts.join(" x "), self.spec.d)
    }
}

/// An enumerated basis with a lookup table.
#[derive(Clone, Debug)]
pub struct Basis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    cutoff: Rational,
}

impl Basis {
    pub fn new(sector: &Sector, cutoff: &Rational) -> Self {
        let monomials = sector.enumerate_basis(cutoff);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Basis { monomials, index, cutoff: cutoff.clone() }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn cutoff(&self) -> &Rational {
        &self.cutoff
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}
