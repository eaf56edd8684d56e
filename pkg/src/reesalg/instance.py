"""JSON instance documents: ring, module, ideals, certificates, extras, parameters.

See README.md for the field-by-field schema.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .arith import CoefField, Polynomial, PolyRing, poly_parse
from .errors import ParseError
from .gb import Ideal
from .iclose import GradedTarget, IdealTarget, IntegralCertificate, MonomialIdeal
from .modalg import Guards, LinearModule, minors_ideal_of_sym_power
from .theorems import Extra

PARAM_KEYS = {"n", "k", "N", "max_minor_size", "max_minors", "max_products", "max_generators", "max_points", "sharp"}


@dataclass
class CertificateRecord:
    """A certificate record before its target has been resolved."""

    subject: str
    coefficients: list
    target: dict
    Z: str | None = None


@dataclass
class Instance:
    doc: dict
    text: str
    ring: PolyRing
    module: LinearModule | None = None
    ideal: Ideal | None = None
    compare_ideal: Ideal | None = None
    certificate: CertificateRecord | None = None
    extras: list = field(default_factory=list)  # raw extra records
    params: dict = field(default_factory=dict)

    @property
    def digest(self) -> str:
        canon = json.dumps(self.doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
        return hashlib.sha256(canon.encode()).hexdigest()

    @property
    def full_ring(self) -> PolyRing:
        return self.module.ring if self.module is not None else self.ring

    def guards(self) -> Guards:
        defaults = Guards()
        return Guards(
            max_minor_size=self.params.get("max_minor_size", defaults.max_minor_size),
            max_minors=self.params.get("max_minors", defaults.max_minors),
            max_products=self.params.get("max_products", defaults.max_products),
            max_generators=self.params.get("max_generators", defaults.max_generators),
            max_points=self.params.get("max_points", defaults.max_points),
        )

    # -- polynomial parsing with document positions ---------------------
    def parse_poly(self, text: Any, ring: PolyRing, where: str) -> Polynomial:
        if not isinstance(text, str):
            raise ParseError(f"{where}: expected a polynomial string")
        try:
            return poly_parse(text, ring)
        except ParseError as exc:
            line, col = _locate(self.text, text, exc.pos or 0)
            raise ParseError(f"{where}: {exc.message}", line=line, column=col) from None

    # -- certificates ----------------------------------------------------
    def build_certificate(self, record: CertificateRecord, guards: Guards) -> IntegralCertificate:
        kind = record.target.get("kind")
        if kind == "ideal":
            gens = record.target.get("generators")
            if gens is None:
                if self.ideal is None:
                    raise ParseError("certificate.target: 'ideal' target needs generators or an ideal block")
                ideal = self.ideal
            else:
                ideal = Ideal(self.ring, [self.parse_poly(g, self.ring, "certificate.target") for g in gens])
            ring = self.ring
            target = IdealTarget(ideal)
        elif kind in ("minors", "module"):
            if self.module is None:
                raise ParseError(f"certificate.target: {kind!r} target needs a module block")
            n = record.target.get("n")
            if not isinstance(n, int) or n < 1:
                raise ParseError("certificate.target.n must be a positive integer")
            if kind == "minors":
                ring = self.ring
                target = IdealTarget(minors_ideal_of_sym_power(self.module, n, guards))
            else:
                ring = self.module.ring
                target = GradedTarget(self.module, n)
        else:
            raise ParseError("certificate.target.kind must be 'ideal', 'minors' or 'module'")
        subject = self.parse_poly(record.subject, ring, "certificate.subject")
        coeffs = [self.parse_poly(a, ring, "certificate.coefficients") for a in record.coefficients]
        return IntegralCertificate(subject, coeffs, target)

    def build_extras(self, guards: Guards) -> list:
        from .iclose import lift_certificate

        out = []
        for idx, rec in enumerate(self.extras):
            where = f"extras[{idx}]"
            degree = rec.get("degree")
            if not isinstance(degree, int) or degree < 1:
                raise ParseError(f"{where}.degree must be a positive integer")
            record = _certificate_record(rec.get("certificate"), where + ".certificate")
            cert = self.build_certificate(record, guards)
            if record.target.get("kind") == "minors":
                if record.Z is None:
                    raise ParseError(f"{where}.certificate: a 'minors' certificate needs Z to be lifted")
                Z = self.parse_poly(record.Z, self.module.ring, where + ".certificate.Z")
                cert = lift_certificate(cert, Z, self.module, record.target["n"], guards)
            element = cert.subject
            if "element" in rec:
                element = self.parse_poly(rec["element"], self.module.ring, where + ".element")
            out.append(Extra(degree, element, cert, rec.get("label", "")))
        return out


def _locate(doc_text: str, fragment: str, offset: int) -> tuple:
    """1-based (line, column) of ``fragment[offset]`` inside the raw document."""
    literal = json.dumps(fragment)
    at = doc_text.find(literal)
    if at < 0:
        return None, None
    at += 1 + offset
    line = doc_text.count("\n", 0, at) + 1
    col = at - (doc_text.rfind("\n", 0, at) + 1) + 1
    return line, col


def _certificate_record(rec: Any, where: str) -> CertificateRecord:
    if not isinstance(rec, dict):
        raise ParseError(f"{where} must be an object")
    for key in ("subject", "coefficients", "target"):
        if key not in rec:
            raise ParseError(f"{where}: missing field {key!r}")
    coeffs = rec["coefficients"]
    if not isinstance(coeffs, list) or not coeffs:
        raise ParseError(f"{where}.coefficients must be a nonempty list")
    if "p" in rec and rec["p"] != len(coeffs):
        raise ParseError(f"{where}: p = {rec['p']} but {len(coeffs)} coefficients given")
    if not isinstance(rec["target"], dict):
        raise ParseError(f"{where}.target must be an object")
    return CertificateRecord(rec["subject"], coeffs, rec["target"], rec.get("Z"))


def load_instance_text(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    ring_rec = doc.get("ring")
    if not isinstance(ring_rec, dict):
        raise ParseError("missing 'ring' block")
    field_name = ring_rec.get("field", "QQ")
    try:
        if field_name == "QQ":
            coef = CoefField()
        elif field_name == "GF":
            coef = CoefField(ring_rec.get("modulus"))
        else:
            raise ParseError("ring.field must be 'QQ' or 'GF'")
        variables = ring_rec.get("vars")
        if not isinstance(variables, list) or not variables:
            raise ParseError("ring.vars must be a nonempty list of names")
        ring = PolyRing(coef, tuple(variables), (), ring_rec.get("order", "grevlex"))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"ring: {exc}") from None

    inst = Instance(doc=doc, text=text, ring=ring)

    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ParseError("params must be an object")
    unknown = set(params) - PARAM_KEYS
    if unknown:
        raise ParseError(f"params: unknown keys {sorted(unknown)}")
    for key, value in params.items():
        if key == "sharp":
            if not isinstance(value, bool):
                raise ParseError("params.sharp must be true or false")
        elif not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ParseError(f"params.{key} must be a nonnegative integer")
    inst.params = dict(params)

    if "module" in doc:
        mod = doc["module"]
        if not isinstance(mod, dict) or not isinstance(mod.get("r"), int) or mod["r"] < 1:
            raise ParseError("module.r must be a positive integer")
        gens = mod.get("generators")
        if not isinstance(gens, list) or not gens:
            raise ParseError("module.generators must be a nonempty list")
        try:
            full = ring.with_ext(mod["r"])
        except ValueError as exc:
            raise ParseError(f"module: {exc}") from None
        forms = [inst.parse_poly(g, full, f"module.generators[{j}]") for j, g in enumerate(gens)]
        try:
            inst.module = LinearModule.from_forms(full, forms, mod.get("labels", ()))
        except ValueError as exc:
            raise ParseError(f"module: {exc}") from None

    for key, attr in (("ideal", "ideal"), ("compare_ideal", "compare_ideal")):
        if key in doc:
            rec = doc[key]
            gens = rec.get("generators") if isinstance(rec, dict) else None
            if not isinstance(gens, list):
                raise ParseError(f"{key}.generators must be a list")
            polys = [inst.parse_poly(g, ring, f"{key}.generators[{j}]") for j, g in enumerate(gens)]
            setattr(inst, attr, Ideal(ring, polys))

    if "certificate" in doc:
        inst.certificate = _certificate_record(doc["certificate"], "certificate")
    if "extras" in doc:
        if not isinstance(doc["extras"], list):
            raise ParseError("extras must be a list")
        if inst.module is None:
            raise ParseError("extras need a module block")
        inst.extras = doc["extras"]
    return inst


def load_instance(path: str | Path) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read instance file: {exc}") from None
    return load_instance_text(text)


def monomial_ideal(I: Ideal) -> MonomialIdeal:
    return MonomialIdeal.from_ideal(I)
