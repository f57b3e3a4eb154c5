# tests/test_report_render.py
from src.combinatorics import Partition
from src.cone import extremal_rays
from src.divisor_model import SymmetricDivisor, is_fnef
from src.pipeline import certify, verify
from src.report_render import (
    audit_payload,
    box,
    certify_payload,
    clamp_width,
    fnef_payload,
    key_value_rows,
    pullback_payload,
    rays_report_payload,
    render_text,
    wrap_text,
)


def test_clamp_and_wrap():
    assert clamp_width("hello", 10) == "hello"
    assert len(clamp_width("abcdefghij", 5)) == 5
    assert clamp_width("abc", 1) == "a"
    assert clamp_width("abc", 0) == ""
    lines = wrap_text("one two three four", 8)
    assert all(len(line) <= 8 for line in lines)
    assert "one" in lines[0]
    assert wrap_text("", 8) == [""]


def test_box_contains_title_and_content():
    frame = box(["entries 10", "mode all"], title="certify", width=40)
    assert "certify" in frame
    assert "entries 10" in frame
    assert frame.startswith("+")
    assert frame.endswith("+")
    assert all(len(line) == 40 for line in frame.splitlines())


def test_key_value_rows_align():
    rows = key_value_rows([("n", 6), ("mode", "strict-only")], key_width=6)
    assert rows == ["n      6", "mode   strict-only"]


def test_fnef_payload(divisor_6_ok, divisor_6_bad):
    assert fnef_payload(divisor_6_ok, is_fnef(divisor_6_ok))["witness"] is None
    bad = fnef_payload(divisor_6_bad, is_fnef(divisor_6_bad))
    assert bad["ok"] is False
    assert bad["witness"] == [3, 1, 1, 1]
    assert bad["value"].endswith("/1")


def test_certify_and_audit_payloads(divisor_6_ok, divisor_6_bad):
    cert = certify(divisor_6_ok, "strict")
    payload = certify_payload(cert)
    assert payload["ok"] is True
    assert payload["entries"] == 4
    audit = audit_payload(cert, verify(cert))
    assert audit["discrepancy"] is None
    assert audit["entries_checked"] == 4
    failure = certify_payload(certify(divisor_6_bad, "strict"))
    assert failure["stage"] == "f-nef"
    assert failure["partitions"] == []


def test_rays_and_pullback_payloads():
    rays = rays_report_payload(extremal_rays(6))
    assert rays["dim"] == 2
    assert rays["rays"] == [[1, 3], [2, 1]]
    degenerate = pullback_payload(Partition.of((4, 2)), None)
    assert degenerate["degenerate"] is True
    assert "effective_boundary" not in degenerate


def test_render_text_skips_empty_values():
    divisor = SymmetricDivisor.zero(6)
    text = render_text(fnef_payload(divisor, is_fnef(divisor)), divisor)
    assert text.splitlines()[0].startswith("+ check-fnef: OK ")
    assert "witness" not in text
    assert "c2=0/1" in text
