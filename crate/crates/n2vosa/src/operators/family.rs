use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use super::quad::{QuadOperator, Term};
use super::residue::{residue_mode, FamilyMode, ModeFamily, SumFamily, VacuumFamily};
use super::Op;
use crate::fock::{Component, Field, FlavorBasis, Sector, SectorSpec, Species, Twist};
use crate::scalar::{CycScalar, Rational};
use crate::superalgebra::{Family, GenSymbol, Presentation};
use crate::Error;

/// The sectors with a prescribed operator table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Bos,
    Fer,
    N1Free,
    N2Free,
    N2FreeCharged,
    SigmaFermion,
    KappaBoson,
    RamondN1,
    RamondN2,
    MirrorKappa,
    SigmaXi { k: i64, j: i64 },
}

impl Preset {
    pub const NAMES: [&'static str; 11] = [
        "bos",
        "fer",
        "n1-free",
        "n2-free",
        "n2-free-charged",
        "sigma-fer",
        "kappa-bos",
        "ramond-n1",
        "ramond-n2",
        "mirror-kappa",
        "sigma-xi",
    ];

    pub fn parse(name: &str, k: i64, j: i64) -> Result<Self, Error> {
        Ok(match name {
            "bos" => Preset::Bos,
            "fer" => Preset::Fer,
            "n1-free" => Preset::N1Free,
            "n2-free" => Preset::N2Free,
            "n2-free-charged" => Preset::N2FreeCharged,
            "sigma-fer" => Preset::SigmaFermion,
            "kappa-bos" => Preset::KappaBoson,
            "ramond-n1" => Preset::RamondN1,
            "ramond-n2" => Preset::RamondN2,
            "mirror-kappa" => Preset::MirrorKappa,
            "sigma-xi" => Preset::SigmaXi { k, j },
            other => {
                return Err(Error::Invalid(format!("unknown sector {other}; expected one of {}", Self::NAMES.join(", "))))
            }
        })
    }

    pub fn spec(&self, d: u32) -> SectorSpec {
        match *self {
            Preset::Bos => SectorSpec::bos(d),
            Preset::Fer => SectorSpec::fer(d),
            Preset::N1Free => SectorSpec::n1_free(d),
            Preset::N2Free => SectorSpec::n2_free(d),
            Preset::N2FreeCharged => SectorSpec::n2_free_charged(d),
            Preset::SigmaFermion => SectorSpec::sigma_fermion(d),
            Preset::KappaBoson => SectorSpec::kappa_boson(d),
            Preset::RamondN1 => SectorSpec::ramond_n1(d),
            Preset::RamondN2 => SectorSpec::ramond_n2(d),
            Preset::MirrorKappa => SectorSpec::mirror_kappa(d),
            Preset::SigmaXi { k, j } => SectorSpec::sigma_xi(d, k, j),
        }
    }

    /// The algebra the sector represents, in its primary basis.
    pub fn presentation(&self) -> Presentation {
        match *self {
            Preset::Bos | Preset::Fer | Preset::SigmaFermion | Preset::KappaBoson => Presentation::virasoro(),
            Preset::N1Free => Presentation::n1_ns(),
            Preset::RamondN1 => Presentation::n1_ramond(),
            Preset::N2Free | Preset::N2FreeCharged => Presentation::n2_shifted(Rational::zero()),
            Preset::RamondN2 => Presentation::n2_shifted_nonhomogeneous(Rational::new(1, 2)).unwrap(),
            Preset::MirrorKappa => Presentation::n2_mirror(),
            Preset::SigmaXi { k, j } => Presentation::n2_shifted(Rational::new(j, k)),
        }
    }

    /// Every presentation whose generators the family can build.
    pub fn presentations(&self) -> Vec<Presentation> {
        let p = self.presentation();
        match *self {
            Preset::N2Free | Preset::N2FreeCharged => {
                vec![p, Presentation::n2_shifted_nonhomogeneous(Rational::zero()).unwrap()]
            }
            Preset::RamondN2 => vec![p, Presentation::n2_shifted(Rational::new(1, 2))],
            _ => vec![p],
        }
    }

    pub fn central_charge(&self, d: u32) -> Rational {
        let d = Rational::from_int(d as i64);
        let f = match self {
            Preset::Bos | Preset::KappaBoson => Rational::one(),
            Preset::Fer | Preset::SigmaFermion => Rational::new(1, 2),
            Preset::N1Free | Preset::RamondN1 => Rational::new(3, 2),
            _ => Rational::from_int(3),
        };
        &f * &d
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::SigmaXi { k, j } => write!(f, "sigma-xi (j/k = {j}/{k})"),
            other => {
                let i = [
                    Preset::Bos,
                    Preset::Fer,
                    Preset::N1Free,
                    Preset::N2Free,
                    Preset::N2FreeCharged,
                    Preset::SigmaFermion,
                    Preset::KappaBoson,
                    Preset::RamondN1,
                    Preset::RamondN2,
                    Preset::MirrorKappa,
                ]
                .iter()
                .position(|p| p == other)
                .unwrap();
                write!(f, "{}", Self::NAMES[i])
            }
        }
    }
}

/// Representative of θ in (−1/2, 1/2].
fn centered(theta: &Rational) -> Rational {
    let t = theta.fract();
    if t > Rational::new(1, 2) {
        &t - &Rational::one()
    } else {
        t
    }
}

/// A sector together with its generator modes.
pub struct OperatorFamily {
    preset: Preset,
    sector: Arc<Sector>,
    central_charge_claim: Rational,
    use_residue: bool,
    table: RwLock<HashMap<GenSymbol, Op>>,
    derived: OnceLock<Result<HashMap<Family, Arc<dyn ModeFamily>>, Error>>,
}

impl OperatorFamily {
    pub fn preset(preset: Preset, d: u32) -> Result<Self, Error> {
        let sector = Arc::new(Sector::new(preset.spec(d))?);
        let use_residue = matches!(preset, Preset::MirrorKappa | Preset::RamondN2);
        Ok(OperatorFamily {
            preset,
            sector,
            central_charge_claim: preset.central_charge(d),
            use_residue,
            table: RwLock::new(HashMap::new()),
            derived: OnceLock::new(),
        })
    }

    /// Same family with every generator built from its closed form.
    pub fn closed_forms_only(mut self) -> Self {
        self.use_residue = false;
        self
    }

    pub fn kind(&self) -> Preset {
        self.preset
    }

    pub fn sector(&self) -> &Arc<Sector> {
        &self.sector
    }

    pub fn presentation(&self) -> Presentation {
        self.preset.presentation()
    }

    pub fn central_charge_claim(&self) -> &Rational {
        &self.central_charge_claim
    }

    fn d(&self) -> u32 {
        self.sector.d()
    }

    fn check_symbol(&self, s: &GenSymbol) -> Result<(), Error> {
        let pres = self.preset.presentations();
        if pres.iter().any(|p| p.supports(s)) {
            return Ok(());
        }
        match pres.iter().find(|p| p.coset(s.family).is_some()) {
            Some(p) => p.check(s),
            None => Err(Error::Undefined(format!("{} is not a generator for the {} sector", s.family.name(), self.preset))),
        }
    }

    /// The generator mode as an operator, cached.
    pub fn op(&self, s: &GenSymbol) -> Result<Op, Error> {
        if let Some(op) = self.table.read().unwrap().get(s) {
            return Ok(op.clone());
        }
        self.check_symbol(s)?;
        let op: Op = match self.derived_family(s.family)? {
            Some(fam) => Arc::new(FamilyMode::new(fam, mode_label(s))?),
            None => Arc::new(self.build_generator(s)?),
        };
        self.table.write().unwrap().insert(s.clone(), op.clone());
        Ok(op)
    }

    fn field(&self, species: Species, comp: Component, flavor: u8) -> Result<Field, Error> {
        self.sector.field(species, comp, flavor)
    }

    fn flavors(&self) -> std::ops::RangeInclusive<u8> {
        1..=self.d() as u8
    }

    fn has_fermion_copy(&self, copy: u8) -> bool {
        self.sector.spec().slots.iter().any(|s| s.species == Species::Fermion && s.copy == copy)
    }

    /// The closed-form quadratic template for a generator mode.
    pub fn build_generator(&self, s: &GenSymbol) -> Result<QuadOperator, Error> {
        self.check_symbol(s)?;
        let n = &s.index;
        let label = s.to_string();
        let mut op = QuadOperator::new(self.sector.clone(), label, s.is_odd());
        let one = CycScalar::one();
        let half = Rational::new(1, 2);
        let d = Rational::from_int(self.d() as i64);
        match s.family {
            Family::L => {
                for (i, slot) in self.sector.spec().slots.iter().enumerate() {
                    match (slot.species, slot.flavor_basis) {
                        (Species::Boson, FlavorBasis::Orthonormal) => {
                            for j in self.flavors() {
                                let a = self.field(Species::Boson, Component::Ortho(slot.copy), j)?;
                                let above = n * &half;
                                op.push(Term::Ordered {
                                    coef: one.clone(),
                                    a: Rational::one(),
                                    b: Rational::zero(),
                                    x: a.clone(),
                                    y: a.clone(),
                                    total: n.clone(),
                                    above: above.clone(),
                                })?;
                                let o = self.sector.field_support(&a)?;
                                if !n.is_zero() && (&above - &o).is_integer() {
                                    op.push(Term::Single {
                                        coef: CycScalar::from(half.clone()),
                                        x: a.clone(),
                                        m: above.clone(),
                                        y: a,
                                        n: above,
                                    })?;
                                }
                            }
                            if slot.twist == Twist::Kappa && n.is_zero() {
                                op.add_constant(&CycScalar::from(&d * &Rational::new(1, 16)));
                            }
                        }
                        (Species::Fermion, FlavorBasis::Orthonormal | FlavorBasis::Polarized) => {
                            for j in self.flavors() {
                                let a = self.field(Species::Fermion, Component::Ortho(slot.copy), j)?;
                                op.push(Term::Ordered {
                                    coef: one.clone(),
                                    a: -&(n * &half),
                                    b: Rational::one(),
                                    x: a.clone(),
                                    y: a,
                                    total: n.clone(),
                                    above: n * &half,
                                })?;
                            }
                            if slot.twist == Twist::Sigma && n.is_zero() {
                                op.add_constant(&CycScalar::from(&d * &Rational::new(1, 16)));
                            }
                        }
                        (Species::Fermion, FlavorBasis::Charged) => {
                            for j in self.flavors() {
                                let p = self.field(Species::Fermion, Component::Charged(true), j)?;
                                let m = self.field(Species::Fermion, Component::Charged(false), j)?;
                                op.push(Term::Ordered {
                                    coef: one.clone(),
                                    a: -&(n * &half),
                                    b: Rational::one(),
                                    x: p.clone(),
                                    y: m.clone(),
                                    total: n.clone(),
                                    above: Rational::zero(),
                                })?;
                                op.push(Term::Ordered {
                                    coef: one.clone(),
                                    a: -&(n * &half),
                                    b: Rational::one(),
                                    x: m,
                                    y: p,
                                    total: n.clone(),
                                    above: n.clone(),
                                })?;
                            }
                            if n.is_zero() {
                                let t = centered(&SectorSpec::theta(slot));
                                op.add_constant(&CycScalar::from(&(&(&t * &t) * &d) * &half));
                            }
                        }
                        other => {
                            return Err(Error::Undefined(format!("no Virasoro template for slot {i} ({other:?})")))
                        }
                    }
                }
            }
            Family::J => {
                if self.has_fermion_copy(1) && self.has_fermion_copy(2) {
                    for j in self.flavors() {
                        op.push(Term::Free {
                            coef: CycScalar::i(),
                            x: self.field(Species::Fermion, Component::Ortho(1), j)?,
                            y: self.field(Species::Fermion, Component::Ortho(2), j)?,
                            total: n.clone(),
                        })?;
                    }
                } else {
                    let slot = self
                        .sector
                        .spec()
                        .slots
                        .iter()
                        .find(|s| s.species == Species::Fermion && s.flavor_basis == FlavorBasis::Charged)
                        .ok_or_else(|| Error::Undefined("J needs two fermion copies".into()))?;
                    for j in self.flavors() {
                        let p = self.field(Species::Fermion, Component::Charged(true), j)?;
                        let m = self.field(Species::Fermion, Component::Charged(false), j)?;
                        op.push(Term::Ordered {
                            coef: one.clone(),
                            a: Rational::one(),
                            b: Rational::zero(),
                            x: p.clone(),
                            y: m.clone(),
                            total: n.clone(),
                            above: Rational::zero(),
                        })?;
                        op.push(Term::Ordered {
                            coef: CycScalar::from_int(-1),
                            a: Rational::one(),
                            b: Rational::zero(),
                            x: m,
                            y: p,
                            total: n.clone(),
                            above: n.clone(),
                        })?;
                    }
                    if n.is_zero() {
                        let t = centered(&SectorSpec::theta(slot));
                        op.add_constant(&CycScalar::from(-&(&t * &d)));
                    }
                }
            }
            Family::GN1 => {
                for j in self.flavors() {
                    op.push(Term::Free {
                        coef: one.clone(),
                        x: self.field(Species::Boson, Component::Ortho(1), j)?,
                        y: self.field(Species::Fermion, Component::Ortho(1), j)?,
                        total: n.clone(),
                    })?;
                }
            }
            Family::G1 | Family::G2 => {
                let pairs: [(u8, u8, i64); 2] =
                    if s.family == Family::G1 { [(1, 1, 1), (2, 2, 1)] } else { [(1, 2, 1), (2, 1, -1)] };
                for j in self.flavors() {
                    for (bc, fc, sign) in pairs {
                        op.push(Term::Free {
                            coef: CycScalar::from_int(sign),
                            x: self.field(Species::Boson, Component::Ortho(bc), j)?,
                            y: self.field(Species::Fermion, Component::Ortho(fc), j)?,
                            total: n.clone(),
                        })?;
                    }
                }
            }
            Family::Gp | Family::Gm => {
                let plus = s.family == Family::Gp;
                for j in self.flavors() {
                    op.push(Term::Free {
                        coef: CycScalar::sqrt2(),
                        x: self.field(Species::Boson, Component::Charged(!plus), j)?,
                        y: self.field(Species::Fermion, Component::Charged(plus), j)?,
                        total: n.clone(),
                    })?;
                }
            }
        }
        Ok(op)
    }

    fn derived_family(&self, family: Family) -> Result<Option<Arc<dyn ModeFamily>>, Error> {
        if !self.use_residue {
            return Ok(None);
        }
        let table = self.derived.get_or_init(|| self.build_derived());
        match table {
            Ok(t) => Ok(t.get(&family).cloned()),
            Err(e) => Err(e.clone()),
        }
    }

    /// Y^g of a free generator, itself obtained from the vacuum.
    pub fn free_field_family(&self, field: &Field) -> Result<Arc<dyn ModeFamily>, Error> {
        let s = twist_exponent(&self.sector, field)?;
        residue_mode(&self.sector, field, &field.weight(), Arc::new(VacuumFamily), &s)
    }

    /// Y^g(a(−n)u, x) for a free generator a.
    pub fn iterate(&self, a: &Field, n: &Rational, u: Arc<dyn ModeFamily>) -> Result<Arc<dyn ModeFamily>, Error> {
        let s = twist_exponent(&self.sector, a)?;
        residue_mode(&self.sector, a, n, u, &s)
    }

    /// Σ_j coef·a_j(−n_a) b_j(−n_b) 1 as a twisted vertex operator.
    fn bilinear(
        &self,
        terms: &[(CycScalar, (Species, Component), Rational, (Species, Component))],
    ) -> Result<Arc<dyn ModeFamily>, Error> {
        let mut parts = Vec::new();
        for j in self.flavors() {
            for (c, (sa, ca), na, (sb, cb)) in terms {
                let a = self.field(*sa, *ca, j)?;
                let b = self.field(*sb, *cb, j)?;
                let u = self.free_field_family(&b)?;
                parts.push((c.clone(), self.iterate(&a, na, u)?));
            }
        }
        Ok(Arc::new(SumFamily::new(parts)?))
    }

    fn build_derived(&self) -> Result<HashMap<Family, Arc<dyn ModeFamily>>, Error> {
        let b = Species::Boson;
        let f = Species::Fermion;
        let one = CycScalar::one();
        let c1 = Component::Ortho(1);
        let c2 = Component::Ortho(2);
        let r1 = Rational::one();
        let rh = Rational::new(1, 2);
        // τ^{(2)} = Σ α_(1)(−1)α_(2)(−1/2)1 − α_(2)(−1)α_(1)(−1/2)1
        let tau2 = self.bilinear(&[(one.clone(), (b, c1), r1.clone(), (f, c2)), (-&one, (b, c2), r1.clone(), (f, c1))])?;
        let mut out = HashMap::new();
        out.insert(Family::G2, tau2);
        if self.preset == Preset::MirrorKappa {
            // μ = i Σ α_(1)(−1/2)α_(2)(−1/2)1
            out.insert(Family::J, self.bilinear(&[(CycScalar::i(), (f, c1), rh, (f, c2))])?);
            // τ^{(1)} = Σ α_(1)(−1)α_(1)(−1/2)1 + α_(2)(−1)α_(2)(−1/2)1
            out.insert(Family::G1, self.bilinear(&[(one.clone(), (b, c1), r1.clone(), (f, c1)), (one, (b, c2), r1, (f, c2))])?);
        }
        Ok(out)
    }

    /// ω = (1/2) Σ α(−3/2)α(−1/2)1 of a single fermion slot, as a twisted
    /// vertex operator built by the iterate formula.
    pub fn fermion_conformal_family(&self, copy: u8) -> Result<Arc<dyn ModeFamily>, Error> {
        let f = Species::Fermion;
        let c = Component::Ortho(copy);
        self.bilinear(&[(CycScalar::from(Rational::new(1, 2)), (f, c), Rational::new(3, 2), (f, c))])
    }
}

/// Representative s ∈ [0, 1) of the twisted mode support of a_m.
pub(crate) fn twist_exponent(sector: &Sector, a: &Field) -> Result<Rational, Error> {
    let o = sector.field_support(a)?;
    Ok((&(&o - &Rational::one()) + &a.weight()).fract())
}

/// The mode label q with L(n) = ω_{n+1}, J(n) = μ_n, G(r) = τ_{r+1/2}.
pub fn mode_label(s: &GenSymbol) -> Rational {
    let shift = match s.family {
        Family::L => Rational::one(),
        Family::J => Rational::zero(),
        _ => Rational::new(1, 2),
    };
    &s.index + &shift
}
