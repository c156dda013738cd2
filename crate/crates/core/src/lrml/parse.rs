//! XML parsing for the supported LegalRuleML fragment. Elements are
//! matched by local name, so any prefix bound to the lrml/ruleml
//! vocabularies is accepted.

use roxmltree::{Document, Node};

use super::*;

/// Parses a LegalRuleML document from XML text. Statements are captured
/// in document order; references and associations are collected from
/// `References`/`LegalReferences` and `Associations` blocks.
pub fn parse_lrml(xml: &str) -> Result<LrmlDocument, LrmlError> {
    let tree = Document::parse(xml)?;
    let root = tree.root_element();

    let mut document = LrmlDocument::default();
    collect_references(root, &mut document)?;
    collect_associations(root, &mut document)?;
    collect_statements(root, &mut document)?;
    Ok(document)
}

fn local<'a>(node: Node<'a, '_>) -> &'a str {
    node.tag_name().name()
}

fn element_children<'a, 'd>(node: Node<'a, 'd>) -> impl Iterator<Item = Node<'a, 'd>> {
    node.children().filter(|c| c.is_element())
}

fn collect_references(root: Node, document: &mut LrmlDocument) -> Result<(), LrmlError> {
    for node in root.descendants().filter(|n| n.is_element()) {
        if matches!(local(node), "LegalReference" | "Reference") {
            let key = node
                .attribute("refersTo")
                .ok_or_else(|| LrmlError::Xml("reference without refersTo".into()))?;
            let text = node
                .attribute("refID")
                .or_else(|| node.attribute("iri"))
                .unwrap_or(key);
            document
                .references
                .insert(key.to_string(), text.to_string());
        }
    }
    Ok(())
}

fn collect_associations(root: Node, document: &mut LrmlDocument) -> Result<(), LrmlError> {
    for node in root.descendants().filter(|n| n.is_element()) {
        if local(node) != "Association" {
            continue;
        }
        let mut sources = Vec::new();
        let mut targets = Vec::new();
        for child in element_children(node) {
            let keyref = child
                .attribute("keyref")
                .map(|k| k.trim_start_matches('#').to_string());
            match local(child) {
                "appliesSource" => sources.extend(keyref),
                "toTarget" => targets.extend(keyref),
                _ => {}
            }
        }
        for target in &targets {
            document
                .associations
                .entry(target.clone())
                .or_default()
                .extend(sources.iter().cloned());
        }
    }
    Ok(())
}

fn collect_statements(root: Node, document: &mut LrmlDocument) -> Result<(), LrmlError> {
    for node in root.descendants().filter(|n| n.is_element()) {
        let kind = match local(node) {
            "PrescriptiveStatement" => StatementKind::Prescriptive,
            "ConstitutiveStatement" => StatementKind::Constitutive,
            "FactualStatement" => StatementKind::Factual,
            _ => continue,
        };
        let statement = parse_statement(node, kind)?;
        if document
            .statements
            .iter()
            .any(|s| s.key == statement.key)
        {
            return Err(LrmlError::DuplicateKey {
                key: statement.key,
            });
        }
        document.statements.push(statement);
    }
    Ok(())
}

fn unsupported(key: &str, feature: impl Into<String>) -> LrmlError {
    LrmlError::UnsupportedFeature {
        key: key.to_string(),
        feature: feature.into(),
    }
}

fn parse_statement(node: Node, kind: StatementKind) -> Result<LrmlStatement, LrmlError> {
    let key = node
        .attribute("key")
        .ok_or_else(|| LrmlError::Xml(format!("{} without key attribute", local(node))))?
        .to_string();

    if let Some(sub) = node
        .descendants()
        .find(|n| n.is_element() && local(*n) == "SuborderList")
    {
        return Err(unsupported(
            &key,
            format!("suborder lists ({})", local(sub)),
        ));
    }

    match kind {
        StatementKind::Factual => {
            let children: Vec<_> = element_children(node).collect();
            let formula_node = match children.as_slice() {
                [single] => *single,
                _ => return Err(unsupported(&key, "factual statement must contain exactly one formula")),
            };
            if contains_deontic(formula_node) {
                return Err(unsupported(&key, "deontic operator in a factual statement"));
            }
            let head = parse_formula(formula_node, &key)?;
            Ok(LrmlStatement {
                kind,
                key,
                closure: Closure::Universal,
                closure_defaulted: false,
                body: None,
                head,
                deontic: None,
                bearer: None,
            })
        }
        StatementKind::Prescriptive | StatementKind::Constitutive => {
            let rule = element_children(node)
                .find(|c| local(*c) == "Rule")
                .ok_or_else(|| unsupported(&key, "statement without a Rule element"))?;

            let (closure, closure_defaulted) = match rule.attribute("closure") {
                Some("universal") => (Closure::Universal, false),
                Some("existential") => (Closure::Existential, false),
                Some(other) => {
                    return Err(unsupported(&key, format!("closure '{other}'")));
                }
                None => (Closure::Universal, true),
            };

            let mut body = None;
            for if_node in element_children(rule).filter(|c| local(*c) == "if") {
                if body.is_some() {
                    return Err(unsupported(&key, "more than one if node"));
                }
                if contains_deontic(if_node) {
                    return Err(unsupported(&key, "deontic operator inside the if node"));
                }
                body = Some(parse_wrapped_formula(if_node, &key)?);
            }

            let then_node = element_children(rule)
                .find(|c| local(*c) == "then")
                .ok_or_else(|| unsupported(&key, "rule without a then node"))?;

            match kind {
                StatementKind::Prescriptive => {
                    let then_children: Vec<_> = element_children(then_node).collect();
                    let deontic_node = match then_children.as_slice() {
                        [single] => *single,
                        _ => {
                            return Err(unsupported(
                                &key,
                                "prescriptive head must be a single deontic operator",
                            ))
                        }
                    };
                    let deontic = match local(deontic_node) {
                        "Obligation" => DeonticOp::Obligation,
                        "Permission" => DeonticOp::Permission,
                        "Prohibition" => DeonticOp::Prohibition,
                        other => {
                            return Err(unsupported(
                                &key,
                                format!("prescriptive head must be deontic, found {other}"),
                            ))
                        }
                    };
                    let mut bearer = None;
                    let mut formula = None;
                    for child in element_children(deontic_node) {
                        match local(child) {
                            "Bearer" => {
                                if bearer.is_some() {
                                    return Err(unsupported(&key, "more than one bearer"));
                                }
                                bearer = Some(parse_bearer(child, &key)?);
                            }
                            _ if contains_deontic(child) => {
                                return Err(unsupported(
                                    &key,
                                    "nested deontic operator in the head",
                                ))
                            }
                            _ => {
                                if formula.is_some() {
                                    return Err(unsupported(
                                        &key,
                                        "compound deontic head (more than one formula)",
                                    ));
                                }
                                formula = Some(parse_formula(child, &key)?);
                            }
                        }
                    }
                    let head = formula
                        .ok_or_else(|| unsupported(&key, "deontic operator without a formula"))?;
                    Ok(LrmlStatement {
                        kind,
                        key,
                        closure,
                        closure_defaulted,
                        body,
                        head,
                        deontic: Some(deontic),
                        bearer,
                    })
                }
                StatementKind::Constitutive => {
                    if contains_deontic(then_node) {
                        return Err(unsupported(
                            &key,
                            "deontic operator in a constitutive head",
                        ));
                    }
                    let head = parse_wrapped_formula(then_node, &key)?;
                    Ok(LrmlStatement {
                        kind,
                        key,
                        closure,
                        closure_defaulted,
                        body,
                        head,
                        deontic: None,
                        bearer: None,
                    })
                }
                StatementKind::Factual => unreachable!(),
            }
        }
    }
}

fn contains_deontic(node: Node) -> bool {
    node.descendants().any(|n| {
        n.is_element() && matches!(local(n), "Obligation" | "Permission" | "Prohibition")
    })
}

fn parse_bearer(node: Node, key: &str) -> Result<LrmlTerm, LrmlError> {
    let children: Vec<_> = element_children(node).collect();
    match children.as_slice() {
        [] => {
            let text = node.text().map(str::trim).unwrap_or_default();
            if text.is_empty() {
                Err(unsupported(key, "empty bearer"))
            } else {
                Ok(LrmlTerm::Individual(text.to_string()))
            }
        }
        [single] => parse_term(*single, key),
        _ => Err(unsupported(key, "bearer with more than one term")),
    }
}

/// Parses a node that wraps exactly one formula element (if/then nodes).
fn parse_wrapped_formula(node: Node, key: &str) -> Result<LrmlFormula, LrmlError> {
    let children: Vec<_> = element_children(node).collect();
    match children.as_slice() {
        [single] => parse_formula(*single, key),
        _ => Err(unsupported(
            key,
            format!("{} must wrap exactly one formula", local(node)),
        )),
    }
}

fn parse_formula(node: Node, key: &str) -> Result<LrmlFormula, LrmlError> {
    match local(node) {
        "Atom" => {
            let mut relation = None;
            let mut args = Vec::new();
            for child in element_children(node) {
                match local(child) {
                    "Rel" => {
                        let text = child.text().map(str::trim).unwrap_or_default();
                        if text.is_empty() {
                            return Err(unsupported(key, "empty relation name"));
                        }
                        relation = Some(text.to_string());
                    }
                    _ => args.push(parse_term(child, key)?),
                }
            }
            let relation =
                relation.ok_or_else(|| unsupported(key, "atom without a Rel element"))?;
            Ok(LrmlFormula::Atom { relation, args })
        }
        "And" => {
            let conjuncts = element_children(node)
                .map(|c| parse_formula(c, key))
                .collect::<Result<Vec<_>, _>>()?;
            if conjuncts.is_empty() {
                return Err(unsupported(key, "empty conjunction"));
            }
            Ok(LrmlFormula::And(conjuncts))
        }
        "Or" => {
            let disjuncts = element_children(node)
                .map(|c| parse_formula(c, key))
                .collect::<Result<Vec<_>, _>>()?;
            if disjuncts.is_empty() {
                return Err(unsupported(key, "empty disjunction"));
            }
            Ok(LrmlFormula::Or(disjuncts))
        }
        "Neg" => {
            let inner = parse_wrapped_formula(node, key)?;
            Ok(LrmlFormula::Neg(Box::new(inner)))
        }
        other => Err(unsupported(key, format!("formula element {other}"))),
    }
}

fn parse_term(node: Node, key: &str) -> Result<LrmlTerm, LrmlError> {
    let text = node.text().map(str::trim).unwrap_or_default().to_string();
    match local(node) {
        "Ind" => {
            if text.is_empty() {
                Err(unsupported(key, "empty individual name"))
            } else {
                Ok(LrmlTerm::Individual(text))
            }
        }
        "Var" => {
            if text.is_empty() {
                Err(unsupported(key, "empty variable name"))
            } else {
                Ok(LrmlTerm::Variable(text))
            }
        }
        other => Err(unsupported(key, format!("term element {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_universal_prescriptive_statement() {
        let xml = r#"
            <lrml:LegalRuleML xmlns:lrml="http://docs.oasis-open.org/legalruleml/ns/v1.0/"
                              xmlns:ruleml="http://ruleml.org/spec">
              <lrml:Statements>
                <lrml:PrescriptiveStatement key="norm2">
                  <ruleml:Rule closure="universal">
                    <ruleml:if>
                      <ruleml:Atom><ruleml:Rel>help</ruleml:Rel></ruleml:Atom>
                    </ruleml:if>
                    <ruleml:then>
                      <lrml:Obligation>
                        <ruleml:Atom><ruleml:Rel>tell</ruleml:Rel></ruleml:Atom>
                      </lrml:Obligation>
                    </ruleml:then>
                  </ruleml:Rule>
                </lrml:PrescriptiveStatement>
              </lrml:Statements>
            </lrml:LegalRuleML>"#;
        let document = parse_lrml(xml).unwrap();
        assert_eq!(document.statements.len(), 1);
        let s = &document.statements[0];
        assert_eq!(s.kind, StatementKind::Prescriptive);
        assert_eq!(s.closure, Closure::Universal);
        assert_eq!(s.deontic, Some(DeonticOp::Obligation));
        assert_eq!(
            s.body,
            Some(LrmlFormula::Atom {
                relation: "help".into(),
                args: vec![]
            })
        );
    }

    #[test]
    fn parses_constitutive_statement_without_deontic() {
        let xml = r#"
            <lrml:LegalRuleML xmlns:lrml="x" xmlns:ruleml="y">
              <lrml:ConstitutiveStatement key="cs1">
                <ruleml:Rule closure="universal">
                  <ruleml:if>
                    <ruleml:Atom><ruleml:Rel>dog</ruleml:Rel><ruleml:Var>X</ruleml:Var></ruleml:Atom>
                  </ruleml:if>
                  <ruleml:then>
                    <ruleml:Atom><ruleml:Rel>animal</ruleml:Rel><ruleml:Var>X</ruleml:Var></ruleml:Atom>
                  </ruleml:then>
                </ruleml:Rule>
              </lrml:ConstitutiveStatement>
            </lrml:LegalRuleML>"#;
        let document = parse_lrml(xml).unwrap();
        let s = &document.statements[0];
        assert_eq!(s.kind, StatementKind::Constitutive);
        assert_eq!(s.deontic, None);
    }

    #[test]
    fn rejects_suborder_lists() {
        let xml = r#"
            <lrml:LegalRuleML xmlns:lrml="x" xmlns:ruleml="y">
              <lrml:PrescriptiveStatement key="n">
                <lrml:SuborderList/>
                <ruleml:Rule closure="universal">
                  <ruleml:then>
                    <lrml:Obligation>
                      <ruleml:Atom><ruleml:Rel>p</ruleml:Rel></ruleml:Atom>
                    </lrml:Obligation>
                  </ruleml:then>
                </ruleml:Rule>
              </lrml:PrescriptiveStatement>
            </lrml:LegalRuleML>"#;
        let err = parse_lrml(xml).unwrap_err();
        assert!(
            matches!(err, LrmlError::UnsupportedFeature { ref key, ref feature }
                if key == "n" && feature.contains("suborder")),
            "unexpected error: {err}"
        );
    }

    #[test]
    fn rejects_deontic_in_if_node() {
        let xml = r#"
            <l:LegalRuleML xmlns:l="x" xmlns:r="y">
              <l:PrescriptiveStatement key="n">
                <r:Rule closure="universal">
                  <r:if>
                    <l:Obligation><r:Atom><r:Rel>p</r:Rel></r:Atom></l:Obligation>
                  </r:if>
                  <r:then>
                    <l:Obligation><r:Atom><r:Rel>q</r:Rel></r:Atom></l:Obligation>
                  </r:then>
                </r:Rule>
              </l:PrescriptiveStatement>
            </l:LegalRuleML>"#;
        let err = parse_lrml(xml).unwrap_err();
        assert!(matches!(err, LrmlError::UnsupportedFeature { ref feature, .. }
            if feature.contains("if node")));
    }

    #[test]
    fn rejects_compound_deontic_head() {
        let xml = r#"
            <l:LegalRuleML xmlns:l="x" xmlns:r="y">
              <l:PrescriptiveStatement key="n">
                <r:Rule closure="universal">
                  <r:then>
                    <l:Obligation><r:Atom><r:Rel>p</r:Rel></r:Atom></l:Obligation>
                    <l:Permission><r:Atom><r:Rel>q</r:Rel></r:Atom></l:Permission>
                  </r:then>
                </r:Rule>
              </l:PrescriptiveStatement>
            </l:LegalRuleML>"#;
        let err = parse_lrml(xml).unwrap_err();
        assert!(matches!(err, LrmlError::UnsupportedFeature { .. }));
    }

    #[test]
    fn missing_closure_defaults_to_universal() {
        let xml = r#"
            <l:LegalRuleML xmlns:l="x" xmlns:r="y">
              <l:PrescriptiveStatement key="n">
                <r:Rule>
                  <r:then>
                    <l:Obligation><r:Atom><r:Rel>p</r:Rel></r:Atom></l:Obligation>
                  </r:then>
                </r:Rule>
              </l:PrescriptiveStatement>
            </l:LegalRuleML>"#;
        let document = parse_lrml(xml).unwrap();
        let s = &document.statements[0];
        assert_eq!(s.closure, Closure::Universal);
        assert!(s.closure_defaulted);
        assert_eq!(s.body, None);
    }

    #[test]
    fn captures_references_and_associations() {
        let xml = r##"
            <l:LegalRuleML xmlns:l="x" xmlns:r="y">
              <l:LegalReferences>
                <l:LegalReference refersTo="art6" refID="GDPR Article 6(1)"/>
              </l:LegalReferences>
              <l:FactualStatement key="f1">
                <r:Neg><r:Atom><r:Rel>help</r:Rel></r:Atom></r:Neg>
              </l:FactualStatement>
              <l:Associations>
                <l:Association>
                  <l:appliesSource keyref="#art6"/>
                  <l:toTarget keyref="#f1"/>
                </l:Association>
              </l:Associations>
            </l:LegalRuleML>"##;
        let document = parse_lrml(xml).unwrap();
        assert_eq!(
            document.references.get("art6").map(String::as_str),
            Some("GDPR Article 6(1)")
        );
        assert_eq!(
            document.associations.get("f1"),
            Some(&vec!["art6".to_string()])
        );
    }

    #[test]
    fn malformed_xml_is_an_xml_error() {
        let err = parse_lrml("<unclosed").unwrap_err();
        assert!(matches!(err, LrmlError::Xml(_)));
    }

    #[test]
    fn parses_bearer_node() {
        let xml = r#"
            <l:LegalRuleML xmlns:l="x" xmlns:r="y">
              <l:PrescriptiveStatement key="n">
                <r:Rule closure="universal">
                  <r:then>
                    <l:Obligation>
                      <l:Bearer><r:Ind>driver</r:Ind></l:Bearer>
                      <r:Atom><r:Rel>register</r:Rel></r:Atom>
                    </l:Obligation>
                  </r:then>
                </r:Rule>
              </l:PrescriptiveStatement>
            </l:LegalRuleML>"#;
        let document = parse_lrml(xml).unwrap();
        assert_eq!(
            document.statements[0].bearer,
            Some(LrmlTerm::Individual("driver".into()))
        );
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let xml = r#"
            <l:LegalRuleML xmlns:l="x" xmlns:r="y">
              <l:FactualStatement key="f"><r:Atom><r:Rel>p</r:Rel></r:Atom></l:FactualStatement>
              <l:FactualStatement key="f"><r:Atom><r:Rel>q</r:Rel></r:Atom></l:FactualStatement>
            </l:LegalRuleML>"#;
        let err = parse_lrml(xml).unwrap_err();
        assert!(matches!(err, LrmlError::DuplicateKey { ref key } if key == "f"));
    }
}
