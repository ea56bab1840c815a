use std::fmt;

/// The rule a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    IdentityEndpoints,
    Totality,
    SourceTarget,
    Associativity,
    IdentityLaw,
    Inverse,
    GroupTotality,
    GroupAssociativity,
    GroupUnit,
    GroupInverse,
    Homomorphism,
    UnitCompatibility,
    Interchange,
    StarEdge,
    Translation,
    GroupTranslation,
    GroupInversion,
    StarConnected,
    WIdentities,
    WInverse,
    WConnected,
    WGenerates,
    VContainment,
    VTree,
    LocalDomain,
    LocalIdentity,
    LocalEndpoints,
    LocalComposition,
    LocalProduct,
    GroupMorphism,
    Functor,
    StarCompatibility,
    SectionSource,
    SectionInjective,
    Extendibility,
    ProductSplit,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::IdentityEndpoints => "identity-endpoints",
            Rule::Totality => "totality",
            Rule::SourceTarget => "source-target",
            Rule::Associativity => "associativity",
            Rule::IdentityLaw => "identity-law",
            Rule::Inverse => "inverse",
            Rule::GroupTotality => "group-totality",
            Rule::GroupAssociativity => "group-associativity",
            Rule::GroupUnit => "group-unit",
            Rule::GroupInverse => "group-inverse",
            Rule::Homomorphism => "homomorphism",
            Rule::UnitCompatibility => "unit-compatibility",
            Rule::Interchange => "interchange",
            Rule::StarEdge => "star-edge",
            Rule::Translation => "translation",
            Rule::GroupTranslation => "group-translation",
            Rule::GroupInversion => "group-inversion",
            Rule::StarConnected => "star-connected",
            Rule::WIdentities => "w-identities",
            Rule::WInverse => "w-inverse",
            Rule::WConnected => "w-connected",
            Rule::WGenerates => "w-generates",
            Rule::VContainment => "v-containment",
            Rule::VTree => "v-tree",
            Rule::LocalDomain => "local-domain",
            Rule::LocalIdentity => "local-identity",
            Rule::LocalEndpoints => "local-endpoints",
            Rule::LocalComposition => "local-composition",
            Rule::LocalProduct => "local-product",
            Rule::GroupMorphism => "group-morphism",
            Rule::Functor => "functor",
            Rule::StarCompatibility => "star-compatibility",
            Rule::SectionSource => "section-source",
            Rule::SectionInjective => "section-injective",
            Rule::Extendibility => "extendibility",
            Rule::ProductSplit => "product-split",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed check, with the elements that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub witnesses: Vec<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.message)?;
        if !self.witnesses.is_empty() {
            write!(f, " [{}]", self.witnesses.join(" "))?;
        }
        Ok(())
    }
}

/// Outcome of a validator. Clean iff there are no violations; notes are
/// informational and never make a report dirty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push<W, S>(&mut self, rule: Rule, witnesses: W, message: impl Into<String>)
    where
        W: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.violations.push(Violation {
            rule,
            witnesses: witnesses.into_iter().map(Into::into).collect(),
            message: message.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn rules(&self) -> Vec<Rule> {
        let mut rules: Vec<Rule> = self.violations.iter().map(|v| v.rule).collect();
        rules.sort();
        rules.dedup();
        rules
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
