from fastapi.testclient import TestClient

from api import app
from conftest import INTERVAL10_JSON, X3_JSON

client = TestClient(app)


def _el(*steps):
    """_el((0, "a", 0), (1, "b")) -> element JSON."""
    return {"breakpoints": [
        {"r": str(s[0]), "x": s[1], **({"label": s[2]} if len(s) > 2 else {})} for s in steps
    ]}


K1 = _el((0, "a", 0), (1, "b"))
K2 = _el((0, "a", 0), (1, "b", 0), (2, "c"))
K3 = _el((0, "a", 1), (1, "b"))
K5 = _el((0, "a", 0), (1, "b", 1), (2, "c"))
L_B = _el((0, "b"))
PT_A = _el((0, "a"))
DIST_TO_A = {"kind": "point_values", "values": ["0", "1", "2"], "lipschitz": "1"}


def test_health():
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_space_check():
    resp = client.post("/v1/space/check", json={"space": X3_JSON})
    assert resp.status_code == 200
    assert resp.json() == {"valid": True, "kind": "finite_discrete", "diameter": "2", "space": X3_JSON}


def test_bad_space_is_400():
    bad = dict(X3_JSON, metric=[["0", "3", "1"], ["3", "0", "1"], ["1", "1", "0"]])
    resp = client.post("/v1/space/check", json={"space": bad})
    assert resp.status_code == 400
    assert "triangle" in resp.json()["detail"]


def test_malformed_body_is_422():
    resp = client.post("/v1/space/diameter", json={"space": {"kind": "sphere"}})
    assert resp.status_code == 422


def test_distance_and_truncation():
    resp = client.post("/v1/elements/distance", json={"space": X3_JSON, "a": K5, "b": K3, "s": "2"})
    assert resp.json() == {"d": "3", "d_trunc": "2"}
    resp = client.post("/v1/elements/distance", json={"space": X3_JSON, "a": K1, "b": L_B})
    assert resp.json() == {"d": "inf"}


def test_meet():
    resp = client.post("/v1/elements/meet", json={"space": X3_JSON, "elements": [K1, K2, K5]})
    assert resp.json() == {"same_component": True, "meet": K1}
    resp = client.post("/v1/elements/meet", json={"space": X3_JSON, "elements": [K1, L_B]})
    assert resp.json() == {"same_component": False}


def test_lipschitz_violation_is_400():
    bad = _el((0, "a", 0), (1, "c"))
    resp = client.post("/v1/elements/tip", json={"space": X3_JSON, "element": bad})
    assert resp.status_code == 400


def test_restrict_and_tip():
    resp = client.post("/v1/elements/restrict", json={"space": X3_JSON, "element": K2, "r": "3/2"})
    assert resp.json() == K1
    resp = client.post("/v1/elements/tip", json={"space": X3_JSON, "element": K2})
    assert resp.json() == {"x": "c"}


def test_predicate():
    resp = client.post("/v1/elements/predicate", json={"space": X3_JSON, "element": K2, "function": DIST_TO_A})
    assert resp.json() == {"value": "2"}
    ramp = {"kind": "piecewise_linear", "knots": [["0", "0"], ["10", "5"]], "lipschitz": "1/2"}
    element = _el((0, "3", 0), (2, "5"))
    resp = client.post("/v1/elements/predicate", json={"space": INTERVAL10_JSON, "element": element, "function": ramp})
    assert resp.json() == {"value": "5/2"}


def test_predicate_rejects_bad_functions():
    steep = dict(DIST_TO_A, values=["0", "0", "2"])
    resp = client.post("/v1/elements/predicate", json={"space": X3_JSON, "element": K2, "function": steep})
    assert resp.status_code == 400
    assert "Lipschitz" in resp.json()["detail"]
    ramp = {"kind": "piecewise_linear", "knots": [["0", "0"], ["10", "5"]], "lipschitz": "1"}
    resp = client.post("/v1/elements/predicate", json={"space": X3_JSON, "element": K2, "function": ramp})
    assert resp.status_code == 400
    resp = client.post("/v1/elements/predicate", json={"space": X3_JSON, "element": K2,
                                                       "function": {"kind": "sine", "lipschitz": "1"}})
    assert resp.status_code == 422


def test_interval_endpoints():
    body = {"space": X3_JSON, "a": K3, "b": K2}
    data = client.post("/v1/intervals/enumerate", json=body).json()
    assert data["length"] == "3"
    assert [e["position"] for e in data["elements"]] == ["0", "1", "2", "3"]
    assert [p["x"] for p in data["path"]["breakpoints"]] == ["b", "a", "b", "c"]

    data = client.post("/v1/intervals/delta", json=dict(body, r="3", x=K5)).json()
    assert data == {"delta": "2", "distance": "1"}

    data = client.post("/v1/intervals/project", json=dict(body, x=K5)).json()
    assert data == {"projection": K1, "distance": "1"}


def test_tree_endpoints():
    resp = client.post("/v1/trees/ccl", json={"space": X3_JSON, "elements": [K3, K2]})
    assert len(resp.json()["elements"]) == 4
    tree = {"intervals": [[K3, K2]]}
    resp = client.post("/v1/trees/project", json={"space": X3_JSON, "tree": tree, "x": K5})
    assert resp.json() == {"projection": K1, "distance": "1"}
    resp = client.post("/v1/trees/project", json={"space": X3_JSON, "tree": {"intervals": [[K3, K2], [K5, K5]]},
                                                  "x": K5})
    assert resp.status_code == 400


def test_isomorphic_intervals():
    body = {"space": X3_JSON, "a": K3, "b": PT_A, "c": K1, "d": PT_A}
    assert client.post("/v1/trees/isomorphic", json=body).json() == {"isomorphic": True}
    assert client.post("/v1/trees/isomorphic", json=dict(body, c=K2)).json() == {"isomorphic": False}
    assert client.post("/v1/trees/isomorphic", json=dict(body, b=L_B)).status_code == 400


def test_path_endpoints():
    f = {"breakpoints": [{"r": "0", "x": "3"}, {"r": "2", "x": "5"}]}
    g = {"breakpoints": [{"r": "0", "x": "16/5"}, {"r": "2", "x": "26/5"}]}
    resp = client.post("/v1/paths/test", json={"space": INTERVAL10_JSON, "f": f, "g": g, "V": "1/2", "e": "1/4"})
    assert resp.json() == {"member": True}

    resp = client.post("/v1/paths/parallel",
                       json={"space": INTERVAL10_JSON, "f": f, "V": "1", "e": "1", "points": ["3", "13/4"]})
    data = resp.json()
    assert data["gamma"] == "49/48"
    ok, outside = data["builds"]
    assert ok["entourage_test"] is True
    assert [p["x"] for p in ok["path"]["breakpoints"]] == ["3", "5"]
    assert "outside" in outside["error"]

    line = {"points": ["0", "1", "2"], "metric": [["0", "1", "2"], ["1", "0", "1"], ["2", "1", "0"]]}
    assert client.post("/v1/paths/axioms", json={"metric": line, "r": "5"}).json() == {"holds": True}


def test_type_endpoints():
    model = {"trees": [{"intervals": [[K3, K2]]}]}
    t1 = {"kind": "path", "m": K1, "f": {"breakpoints": [{"r": "0", "x": "b"}, {"r": "1", "x": "c"}]}}
    t2 = {"kind": "path", "m": K2, "f": {"breakpoints": [{"r": "0", "x": "c"}]}}
    body = {"space": X3_JSON, "model": model, "t1": t1, "t2": t2}
    assert client.post("/v1/types/distance", json=body).json() == {"d": "2"}
    assert client.post("/v1/types/oracle", json=body).json() == {"d": "2"}
    q = {"space": X3_JSON, "model": model, "t1": {"kind": "infinite", "x": "a"}, "t2": {"kind": "infinite", "x": "b"}}
    assert client.post("/v1/types/distance", json=q).json() == {"d": "1"}


def test_property_run():
    resp = client.post("/v1/properties/run", json={
        "suite": "big-distance", "space": X3_JSON, "seed": 5, "cases": 3, "max_breakpoints": 3,
    })
    assert resp.status_code == 200
    data = resp.json()
    assert (data["suite"], data["cases"], data["violations"]) == ("big-distance", 3, [])


def test_unknown_suite_is_400():
    resp = client.post("/v1/properties/run", json={"suite": "nope", "space": X3_JSON})
    assert resp.status_code == 400
