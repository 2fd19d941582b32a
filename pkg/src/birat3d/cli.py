"""Command-line front end.

One subcommand per pipeline stage; every input is a JSON file in the
documented formats.  Exit codes: 0 on success, 1 for domain errors
(a net that is not birational, a degenerate construction, ...), 2 for
input errors (malformed JSON, bad flags).  Domain errors print
``{"error": code, "detail": ...}`` on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from .birationality import (best_rank_one, canonical_variant_key,
                            delta_variants, distance_to_birationality,
                            is_birational, synthesize_weights, weight_tensor)
from .constructions import construct, deform_from_json, parse_construction_spec
from .controlnet import classification_of, classify
from .errors import Birat3dError, InputError
from .inversion import eval_inverse, eval_map, invert
from .jsonio import (check_report, dump_document, load_json, load_net,
                     net_to_json)
from .mesh import boundary_mesh, mesh_to_obj
from .scalars import parse_scalar, scalar_to_json, scale_first_one


def _scalar_list(text: str, count: int, what: str) -> list:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise InputError(f"{what} needs {count} comma-separated scalars")
    return [parse_scalar(p) for p in parts]


def _emit(doc, out: str | None):
    text = dump_document(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_classify(args) -> int:
    net = load_net(args.net)
    _emit(classify(net).to_json(), args.output)
    return 0


def _cmd_check(args) -> int:
    net = load_net(args.net)
    _emit(check_report(net), args.output)
    return 0


def _cmd_weights(args) -> int:
    net = load_net(args.net)
    abc = _scalar_list(args.abc, 6, "--abc")
    factors = (tuple(abc[0:2]), tuple(abc[2:4]), tuple(abc[4:6]))
    out = synthesize_weights(net, factors)
    _emit(net_to_json(out), args.output)
    return 0


def _cmd_invert(args) -> int:
    net = load_net(args.net)
    _emit(invert(net).to_json(), args.output)
    return 0


def _cmd_baselocus(args) -> int:
    net = load_net(args.net)
    data = invert(net)
    _emit({"forward": data.base_ideal.to_json(),
           "inverse": data.base_inverse.to_json()}, args.output)
    return 0


def _cmd_eval(args) -> int:
    net = load_net(args.net)
    stu = _scalar_list(args.stu, 6, "--stu")
    coords = eval_map(net, (stu[0:2], stu[2:4], stu[4:6]))
    print(" ".join(scalar_to_json(c)
                   for c in scale_first_one(coords, net.ctx())))
    return 0


def _cmd_ieval(args) -> int:
    net = load_net(args.net)
    xyz = _scalar_list(args.xyz, 4, "--xyz")
    pairs = eval_inverse(invert(net).inverse, xyz)
    print(" ".join(f"{scalar_to_json(p)}:{scalar_to_json(q)}"
                   for p, q in pairs))
    return 0


def _cmd_distance(args) -> int:
    net = load_net(args.net)
    print(distance_to_birationality(net))
    return 0


def _cmd_approx(args) -> int:
    net = load_net(args.net)
    cls = classification_of(net)
    if cls.class_name == "unclassified":
        raise InputError("approx needs a classified net")
    key = canonical_variant_key(cls.class_name)
    delta = delta_variants(net, cls)[key].tensor
    approx = best_rank_one(weight_tensor(net, delta))
    nearest = synthesize_weights(net, approx.pairs, cls)
    doc = {"approximation": approx.to_json(), "net": net_to_json(nearest)}
    _emit(doc, args.output)
    return 0


def _cmd_construct(args) -> int:
    data = load_json(args.spec)
    if not isinstance(data, dict):
        raise InputError("a construction spec must be a JSON object")
    if args.class_name:
        inside = data.get("class")
        if inside is not None and inside != args.class_name:
            raise InputError(
                f"--class {args.class_name} does not match the spec's "
                f"class {inside!r}")
        data = dict(data, **{"class": args.class_name})
    net = construct(parse_construction_spec(data))
    doc = net_to_json(net)
    doc["class"] = net.classification.class_name
    _emit(doc, args.output)
    return 0


def _cmd_deform(args) -> int:
    doc = load_json(args.doc)
    frames = deform_from_json(doc)
    out = {"class": frames[0].classification.class_name if frames else None,
           "frames": [net_to_json(f) for f in frames]}
    _emit(out, args.output)
    return 0


def _cmd_mesh(args) -> int:
    net = load_net(args.net)
    mesh = boundary_mesh(net, args.res)
    text = mesh_to_obj(mesh)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_serve(args) -> int:
    from .service import serve
    serve(port=args.port, state_dir=args.state_dir)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="birat3d",
        description="Trilinear birational maps: classify, check, invert, "
                    "approximate, construct, deform, mesh, serve.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, net=True, output=True):
        p = sub.add_parser(name, help=help_text)
        if net:
            p.add_argument("net", help="control net JSON file")
        if output:
            p.add_argument("-o", "--output", default=None,
                           help="write to this file instead of stdout")
        p.set_defaults(func=func)
        return p

    add("classify", _cmd_classify, "classify a control net")
    add("check", _cmd_check, "full birationality report incl. distance")
    p = add("weights", _cmd_weights, "synthesize birational weights")
    p.add_argument("--abc", required=True,
                   help="factor pairs a0,a1,b0,b1,c0,c1")
    add("invert", _cmd_invert, "closed-form inverse and base loci")
    add("baselocus", _cmd_baselocus, "forward and inverse base loci")
    p = add("eval", _cmd_eval, "evaluate the map", output=False)
    p.add_argument("--stu", required=True,
                   help="parameter pairs s0,s1,t0,t1,u0,u1")
    p = add("ieval", _cmd_ieval, "evaluate the inverse", output=False)
    p.add_argument("--xyz", required=True, help="target point x0,x1,x2,x3")
    add("distance", _cmd_distance, "distance to birationality", output=False)
    add("approx", _cmd_approx, "nearest birational weights")
    p = add("construct", _cmd_construct, "run a class construction",
            net=False)
    p.add_argument("--class", dest="class_name", default=None,
                   help="hexahedral | pyramidal | scaffold | tripod")
    p.add_argument("--spec", required=True, help="construction spec JSON")
    p = add("deform", _cmd_deform, "interpolate keyframes into frames",
            net=False)
    p.add_argument("doc", help="deformation document JSON")
    p = add("mesh", _cmd_mesh, "OBJ quad mesh of the boundary surfaces")
    p.add_argument("--res", type=int, default=8, help="lattice resolution")
    p = add("serve", _cmd_serve, "run the HTTP session service",
            net=False, output=False)
    p.add_argument("--port", type=int, default=8723)
    p.add_argument("--state-dir", default=None,
                   help="directory for JSON session snapshots")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Birat3dError as exc:
        sys.stderr.write(json.dumps(exc.to_json()) + "\n")
        return 2 if isinstance(exc, InputError) else 1


if __name__ == "__main__":
    sys.exit(main())
