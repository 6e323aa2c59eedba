"""Model document parsing and serialization.

The canonical interchange format is a JSON document; an XML form mirrors
it element-for-element for imports from XML-based stores. Both formats
are UTF-8 and round-trip: ``parse_model(serialize_model(m), fmt) == m``
for any valid (fully parameterized) model.

Parsing is strict: unknown keys, unknown kinds, dangling component
references, duplicate elements and out-of-range parameter values are all
rejected with a :class:`ModelParseError` naming the offending item.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET

from .model import (
    ABIOTIC_PARAM_DEFAULTS,
    BIOTIC_PARAM_DEFAULTS,
    RELATIONSHIP_PARAM_DEFAULTS,
    RELATIONSHIP_PARAM_FIELDS,
    AbioticParams,
    BioticParams,
    Component,
    ComponentKind,
    ConceptualModel,
    PopulationBasis,
    Relationship,
    RelationshipKind,
    abiotic_range_error,
    biotic_range_error,
    relationship_range_error,
    validate_model,
)

__all__ = [
    "ModelParseError",
    "parse_model",
    "serialize_model",
    "model_from_document",
    "model_to_document",
]

FORMATS = ("json", "xml")

_MODEL_KEYS = {"id", "name", "project_id", "notes", "components", "relationships"}
_COMPONENT_KEYS = {"id", "display_name", "kind", "population_basis", "params"}
_RELATIONSHIP_KEYS = {"id", "kind", "source", "target", "params"}


class ModelParseError(ValueError):
    """A model document is malformed or breaks a structural rule."""


def parse_model(document: str, format: str = "json") -> ConceptualModel:
    """Parse a model document in the given format ("json" or "xml").

    Returns a model with every parameter populated (documented defaults
    fill whatever the document omits).
    """
    if format not in FORMATS:
        raise ModelParseError(f"unsupported format {format!r}; expected one of {FORMATS}")
    if format == "json":
        try:
            raw = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ModelParseError(f"malformed JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ModelParseError("model document must be a JSON object")
        return model_from_document(raw)
    return _model_from_xml(document)


def serialize_model(model: ConceptualModel, format: str = "json") -> str:
    """Serialize a model to a document in the given format."""
    if format not in FORMATS:
        raise ModelParseError(f"unsupported format {format!r}; expected one of {FORMATS}")
    if format == "json":
        return json.dumps(model_to_document(model), indent=2, ensure_ascii=False) + "\n"
    return _model_to_xml(model)


# ---------------------------------------------------------------------------
# JSON-shaped documents (also the body format of the HTTP service)
# ---------------------------------------------------------------------------


def model_from_document(raw: dict) -> ConceptualModel:
    """Build a model from a decoded JSON-shaped document, strictly."""
    _reject_unknown_keys(raw, _MODEL_KEYS, "model")
    model = ConceptualModel(
        id=_required_str(raw, "id", "model"),
        name=_required_str(raw, "name", "model"),
        project_id=_optional_str(raw, "project_id", "model"),
        notes=_optional_str(raw, "notes", "model"),
        components=[_component_from(entry) for entry in _entry_list(raw, "components")],
        relationships=[_relationship_from(entry) for entry in _entry_list(raw, "relationships")],
    )
    _check_references(model)
    return model


def model_to_document(model: ConceptualModel) -> dict:
    doc: dict = {"id": model.id, "name": model.name}
    if model.project_id is not None:
        doc["project_id"] = model.project_id
    if model.notes is not None:
        doc["notes"] = model.notes
    doc["components"] = [_component_to(c) for c in model.components]
    doc["relationships"] = [_relationship_to(r) for r in model.relationships]
    return doc


def _entry_list(raw: dict, key: str) -> list[dict]:
    value = raw.get(key, [])
    if not isinstance(value, list) or any(not isinstance(e, dict) for e in value):
        raise ModelParseError(f"model {key} must be a list of objects")
    return value


def _reject_unknown_keys(raw: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ModelParseError(f"unknown key {unknown[0]!r} in {where}")


def _required_str(raw: dict, key: str, where: str) -> str:
    value = raw.get(key)
    if not isinstance(value, str) or not value:
        raise ModelParseError(f"{where} requires a non-empty string {key!r}")
    return value


def _optional_str(raw: dict, key: str, where: str) -> str | None:
    value = raw.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise ModelParseError(f"{key!r} in {where} must be a string")
    return value


def _number(value: object, name: str, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ModelParseError(f"parameter {name!r} in {where} must be a number")
    return float(value)


def _component_from(raw: dict) -> Component:
    _reject_unknown_keys(raw, _COMPONENT_KEYS, "component")
    cid = _required_str(raw, "id", "component")
    where = f"component {cid!r}"
    kind_text = _required_str(raw, "kind", where)
    try:
        kind = ComponentKind(kind_text)
    except ValueError:
        raise ModelParseError(f"unknown component kind {kind_text!r} in {where}") from None

    basis = PopulationBasis.INDIVIDUALS
    if "population_basis" in raw:
        basis_text = _required_str(raw, "population_basis", where)
        try:
            basis = PopulationBasis(basis_text)
        except ValueError:
            raise ModelParseError(f"unknown population basis {basis_text!r} in {where}") from None
        if basis is PopulationBasis.AREA_DENSITY and kind is not ComponentKind.BIOTIC:
            raise ModelParseError(f"area-density basis requires a biotic component in {where}")

    params_raw = raw.get("params", {})
    if not isinstance(params_raw, dict):
        raise ModelParseError(f"params in {where} must be an object")

    if kind is ComponentKind.BIOTIC:
        params = _biotic_params_from(params_raw, where)
    else:
        params = _abiotic_params_from(params_raw, where)

    return Component(
        id=cid,
        display_name=_required_str(raw, "display_name", where),
        kind=kind,
        params=params,
        population_basis=basis,
    )


def _biotic_params_from(raw: dict, where: str) -> BioticParams:
    values: dict[str, float] = {}
    for name, value in raw.items():
        if name not in BIOTIC_PARAM_DEFAULTS:
            raise ModelParseError(f"unknown parameter {name!r} in {where}")
        number = _number(value, name, where)
        message = biotic_range_error(name, number)
        if message:
            raise ModelParseError(f"{where}: {message}")
        values[name] = number
    return BioticParams(**values).filled()


def _abiotic_params_from(raw: dict, where: str) -> AbioticParams:
    values: dict[str, float] = {}
    for name, value in raw.items():
        if name not in ABIOTIC_PARAM_DEFAULTS:
            raise ModelParseError(f"unknown parameter {name!r} in {where}")
        number = _number(value, name, where)
        message = abiotic_range_error(name, number)
        if message:
            raise ModelParseError(f"{where}: {message}")
        values[name] = number
    return AbioticParams(**values).filled()


def _relationship_from(raw: dict) -> Relationship:
    _reject_unknown_keys(raw, _RELATIONSHIP_KEYS, "relationship")
    rid = _required_str(raw, "id", "relationship")
    where = f"relationship {rid!r}"
    kind_text = _required_str(raw, "kind", where)
    try:
        kind = RelationshipKind(kind_text)
    except ValueError:
        raise ModelParseError(f"unknown relationship kind {kind_text!r} in {where}") from None

    params_raw = raw.get("params", {})
    if not isinstance(params_raw, dict):
        raise ModelParseError(f"params in {where} must be an object")
    allowed = RELATIONSHIP_PARAM_FIELDS[kind]
    values: dict[str, float] = {}
    for name, value in params_raw.items():
        if name not in allowed:
            raise ModelParseError(
                f"unknown parameter {name!r} for {kind.value} relationship in {where}"
            )
        number = _number(value, name, where)
        message = relationship_range_error(name, number)
        if message:
            raise ModelParseError(f"{where}: {message}")
        values[name] = number

    rel = Relationship(
        id=rid,
        kind=kind,
        source=_required_str(raw, "source", where),
        target=_required_str(raw, "target", where),
        **values,
    )
    # Fill omitted kind parameters with the documented defaults.
    for name in allowed:
        if getattr(rel, name) is None:
            setattr(rel, name, RELATIONSHIP_PARAM_DEFAULTS[name])
    return rel


def _component_to(comp: Component) -> dict:
    out: dict = {
        "id": comp.id,
        "display_name": comp.display_name,
        "kind": comp.kind.value,
    }
    if comp.population_basis is not PopulationBasis.INDIVIDUALS:
        out["population_basis"] = comp.population_basis.value
    params = {
        name: _plain_number(value)
        for name, value in vars(comp.params).items()
        if value is not None
    }
    out["params"] = params
    return out


def _relationship_to(rel: Relationship) -> dict:
    return {
        "id": rel.id,
        "kind": rel.kind.value,
        "source": rel.source,
        "target": rel.target,
        "params": {
            name: _plain_number(value)
            for name, value in rel.own_params().items()
            if value is not None
        },
    }


def _plain_number(value: float) -> int | float:
    # Integral values serialize without a trailing ".0"; parsing converts
    # back to float, so round trips are unaffected.
    return int(value) if float(value).is_integer() and abs(value) < 2**53 else value


def _check_references(model: ConceptualModel) -> None:
    report = validate_model(model)
    structural = {
        "duplicate-component-id",
        "unknown-component-ref",
        "duplicate-relationship",
    }
    for violation in report.violations:
        if violation.rule in structural:
            raise ModelParseError(f"[{violation.rule}] {violation.element_id}: {violation.message}")


# ---------------------------------------------------------------------------
# XML mirror
# ---------------------------------------------------------------------------


def _model_from_xml(document: str) -> ConceptualModel:
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise ModelParseError(f"malformed XML: {exc}") from exc
    if root.tag != "model":
        raise ModelParseError(f"expected <model> root element, got <{root.tag}>")

    doc: dict = dict(root.attrib)
    for child in root:
        if child.tag == "notes":
            doc["notes"] = child.text or ""
        elif child.tag == "components":
            doc["components"] = [_xml_component(e) for e in child]
        elif child.tag == "relationships":
            doc["relationships"] = [_xml_relationship(e) for e in child]
        else:
            raise ModelParseError(f"unknown element <{child.tag}> in <model>")
    return model_from_document(doc)


def _xml_params(element: ET.Element, where: str) -> dict:
    params: dict = {}
    for child in element:
        if child.tag != "param":
            raise ModelParseError(f"unknown element <{child.tag}> in {where}")
        name = child.attrib.get("name")
        value = child.attrib.get("value")
        if name is None or value is None:
            raise ModelParseError(f"<param> in {where} requires name and value attributes")
        try:
            params[name] = float(value)
        except ValueError:
            raise ModelParseError(f"parameter {name!r} in {where} must be a number") from None
    return params


def _xml_component(element: ET.Element) -> dict:
    if element.tag != "component":
        raise ModelParseError(f"unknown element <{element.tag}> in <components>")
    allowed = {"id", "display-name", "kind", "population-basis"}
    unknown = sorted(set(element.attrib) - allowed)
    if unknown:
        raise ModelParseError(f"unknown attribute {unknown[0]!r} on <component>")
    out: dict = {
        "id": element.attrib.get("id"),
        "display_name": element.attrib.get("display-name"),
        "kind": element.attrib.get("kind"),
        "params": _xml_params(element, f"component {element.attrib.get('id')!r}"),
    }
    if "population-basis" in element.attrib:
        out["population_basis"] = element.attrib["population-basis"]
    return out


def _xml_relationship(element: ET.Element) -> dict:
    if element.tag != "relationship":
        raise ModelParseError(f"unknown element <{element.tag}> in <relationships>")
    allowed = {"id", "kind", "source", "target"}
    unknown = sorted(set(element.attrib) - allowed)
    if unknown:
        raise ModelParseError(f"unknown attribute {unknown[0]!r} on <relationship>")
    return {
        "id": element.attrib.get("id"),
        "kind": element.attrib.get("kind"),
        "source": element.attrib.get("source"),
        "target": element.attrib.get("target"),
        "params": _xml_params(element, f"relationship {element.attrib.get('id')!r}"),
    }


def _model_to_xml(model: ConceptualModel) -> str:
    doc = model_to_document(model)
    root = ET.Element("model", {"id": doc["id"], "name": doc["name"]})
    if "project_id" in doc:
        root.set("project_id", doc["project_id"])
    if "notes" in doc:
        notes = ET.SubElement(root, "notes")
        notes.text = doc["notes"]
    components = ET.SubElement(root, "components")
    for comp in doc["components"]:
        attrs = {
            "id": comp["id"],
            "display-name": comp["display_name"],
            "kind": comp["kind"],
        }
        if "population_basis" in comp:
            attrs["population-basis"] = comp["population_basis"]
        element = ET.SubElement(components, "component", attrs)
        for name, value in comp["params"].items():
            ET.SubElement(element, "param", {"name": name, "value": str(value)})
    relationships = ET.SubElement(root, "relationships")
    for rel in doc["relationships"]:
        element = ET.SubElement(
            relationships,
            "relationship",
            {"id": rel["id"], "kind": rel["kind"], "source": rel["source"], "target": rel["target"]},
        )
        for name, value in rel["params"].items():
            ET.SubElement(element, "param", {"name": name, "value": str(value)})
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"
