"""
Text and JSON rendering of command results.

Every formatter reads the same dict that is emitted in JSON mode, so both
output formats always carry identical values.
"""
import json
from typing import Any, Callable, Dict


def render(data: Dict[str, Any], output_format: str, formatter: Callable[[Dict[str, Any]], str]) -> str:
    """Serialize `data` as indented JSON or through a text formatter."""
    if output_format == "json":
        return json.dumps(data, indent=2, sort_keys=True)
    return formatter(data)


def _flag(value: Any) -> str:
    if value is None:
        return "n/a"
    return "yes" if value else "no"


def format_verdict_report(result: Dict[str, Any]) -> str:
    """Criteria table followed by the final verdict."""
    profile = result.get("profile", {})
    lines = [
        f"Profile: n={profile.get('n')} d={profile.get('d')} mults={profile.get('mults')} "
        f"position={profile.get('position')}",
        "",
        f"{'criterion':<18} {'value':<6} hypothesis",
    ]
    for criterion in result.get("criteria", []):
        lines.append(f"{criterion['name']:<18} {_flag(criterion['value']):<6} {criterion['hypothesis_text']}")
    lines.append("")
    reason = result.get("reason")
    lines.append(f"Verdict: {result['verdict']}" + (f" ({reason})" if reason else ""))
    if result.get("strict_transform"):
        cls = result["strict_transform"]
        lines.append(
            f"Strict transform: {cls['a']}H - sum {cls['bs']} E_i, self-intersection {result.get('self_intersection')}"
        )
    return "\n".join(lines)


def format_analysis_report(result: Dict[str, Any]) -> str:
    points = result.get("singular_points", [])
    lines = [f"Singular points over F_{result['prime']}^e, e <= {result['e_max']}: {len(points)}"]
    if not result.get("isolated", True):
        lines.append("Singular locus is not isolated; no point reports")
    for item in points:
        coords = ":".join(item["point"])
        lines.append(
            f"  [{coords}] m={item['multiplicity']} ordinary={_flag(item['ordinary'])} "
            f"({item['certificate_kind']}) milnor={item['milnor']} expected={item['expected_milnor']}"
        )
        lines.append(f"      tangent cone: {item['tangent_cone']}")
    agreement = result.get("two_prime_agreement")
    if result.get("second_prime") is not None:
        lines.append(
            f"Second prime {result['second_prime']}: {result['second_prime_points']} point(s), "
            f"agreement={_flag(agreement)}"
        )
    for note in result.get("notes", []):
        lines.append(f"Note: {note}")
    return "\n".join(lines)


def format_construction_report(result: Dict[str, Any]) -> str:
    lines = [
        f"Family: {result['family']} {result['params']}",
        f"Degree {result['d']} in P^{result['n']}, {result['k']} expected singular point(s) "
        f"of multiplicity {result['expected_multiplicity']}",
    ]
    for point in result["expected_singular_points"]:
        lines.append(f"  [{':'.join(point)}]")
    if result.get("non_factorial_witness"):
        lines.append(f"Non-factorial witness: {result['non_factorial_witness']}")
    lines.append(f"Seed {result['seed']}, re-draws {result['retries']}")
    for key, value in sorted(result.get("metadata", {}).items()):
        lines.append(f"  {key}: {value}")
    if result.get("poly_file"):
        lines.append(f"Wrote {result['poly_file']} and {result['sidecar_file']}")
    return "\n".join(lines)


def format_defect_report(result: Dict[str, Any]) -> str:
    return (
        f"k={result['k']} degree={result['degree_checked']} monomials={result['monomial_count']} "
        f"rank={result['rank']} defect={result['defect']} b4={result['b4']}"
        + (f" coplanar={_flag(result['coplanar'])}" if "coplanar" in result else "")
    )


def format_intersection_report(result: Dict[str, Any]) -> str:
    return f"({result['a']}H - sum {result['bs']} E_i)^{result['n']} = {result['intersection_number']}"
