"""
命令行入口

子命令：
- verify: 运行检查并输出报告表格或 JSON
- lvalue: 计算 L(E_N, 2)
- hyp: 3F2(1) 与 F~(alpha, beta) 求值
- qexpand: 展开 eta/theta 表达式

退出码：0 全部通过；1 有检查失败；2 用法错误或输入错误。
"""

import argparse
import json
import logging
import math
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from app.config import Settings
from app.infra.errors import VerifyError
from app.infra.specfun import ftilde, ftilde_via_dixon, hyp3f2_unit
from app.models import CheckStatus, LValueMethod, OutputMode
from app.schemas import CheckReport, CliConfig, FtildeParams, HypParams, LValueResult
from app.services import verify_service
from app.services.curves import get_curve
from app.services.lseries import compute_lvalue, lvalue2_series
from app.services.qexpr import eval_expr, parse, to_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_METHOD_CHOICES = {
    "series": (LValueMethod.SERIES,),
    "integral": (LValueMethod.THETA_INTEGRAL,),
    "elementary": (LValueMethod.ELEMENTARY,),
    "both": (LValueMethod.SERIES, LValueMethod.THETA_INTEGRAL),
    "all": (LValueMethod.SERIES, LValueMethod.THETA_INTEGRAL, LValueMethod.ELEMENTARY),
}


# ============== JSON 输出 ==============

def dump_json(value: object) -> str:
    """序列化为 JSON；浮点数按 17 位有效数字输出，非有限值输出 null"""
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        return format(value, ".17g") if math.isfinite(value) else "null"
    if isinstance(value, (int, str)):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        items = (f"{json.dumps(str(k), ensure_ascii=False)}: {dump_json(v)}" for k, v in value.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(dump_json(v) for v in value) + "]"
    raise TypeError(f"not JSON serializable: {type(value).__name__}")


def _fmt(value: float | str) -> str:
    return value if isinstance(value, str) else f"{value:.3e}"


def format_report_table(reports: Sequence[CheckReport]) -> str:
    """按检查名对齐的表格，误差使用 3 位科学计数法"""
    width = max((len(r.name) for r in reports), default=4)
    lines = [f"{'name':<{width}}  {'status':<11}  {'abs_err':>10}  {'rel_err':>10}  {'tol':>10}  {'ms':>9}"]
    for r in reports:
        lines.append(
            f"{r.name:<{width}}  {r.status.value:<11}  {_fmt(r.abs_err):>10}  {_fmt(r.rel_err):>10}"
            f"  {_fmt(r.tolerance):>10}  {r.runtime_ms:>9.1f}"
        )
        if r.detail and not r.passed:
            lines.append(f"{'':<{width}}  -> {r.detail}")
    failed = sum(1 for r in reports if r.status in (CheckStatus.FAIL, CheckStatus.ERROR))
    lines.append(f"{len(reports)} checks, {failed} failed")
    return "\n".join(lines)


# ============== 参数解析 ==============

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lvalue-verify",
        description="Verify the eta/theta identities and 3F2 closed forms for L(E_N, 2), N in {27, 32, 64}.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    verify = sub.add_parser("verify", help="run registered checks")
    selector = verify.add_mutually_exclusive_group()
    selector.add_argument("--check", action="append", metavar="NAME", help="run a named check (repeatable)")
    selector.add_argument("--prefix", metavar="P", help="run checks whose name starts with P")
    selector.add_argument("--all", action="store_true", help="run every check (default)")
    verify.add_argument("--order", type=int, default=4800, help="truncation in units of q^(1/24)")
    verify.add_argument("--tol", type=float, default=None, help="override every numeric tolerance")
    verify.add_argument("--json", action="store_true", help="emit a JSON array of reports")
    verify.add_argument("--jobs", type=int, default=4, help="checks run in parallel")
    verify.add_argument("--seed", type=int, default=None, help="add random sample points")

    lvalue = sub.add_parser("lvalue", help="compute L(E_N, 2)")
    lvalue.add_argument("--curve", type=int, required=True, choices=(27, 32, 64))
    lvalue.add_argument("--method", default="series", choices=tuple(_METHOD_CHOICES))
    lvalue.add_argument("--terms", type=int, default=None, help="series terms M")
    lvalue.add_argument("--json", action="store_true")

    hyp = sub.add_parser("hyp", help="hypergeometric values at 1")
    hyp_sub = hyp.add_subparsers(dest="hyp_command", required=True)
    hyp_eval = hyp_sub.add_parser("eval", help="3F2[a, b, c; e, f | 1]")
    hyp_eval.add_argument("--params", required=True, metavar="a,b,c,e,f")
    hyp_eval.add_argument("--terms", type=int, default=None)
    hyp_eval.add_argument("--json", action="store_true")
    hyp_ft = hyp_sub.add_parser("ftilde", help="F~(alpha, beta) by definition and by Dixon's form")
    hyp_ft.add_argument("--alpha", type=float, required=True)
    hyp_ft.add_argument("--beta", type=float, required=True)
    hyp_ft.add_argument("--json", action="store_true")

    qexp = sub.add_parser("qexpand", help="expand an eta/theta expression")
    qexp.add_argument("expr")
    qexp.add_argument("--order", type=int, default=240, help="truncation in units of q^(1/24)")
    qexp.add_argument("--json", action="store_true", help="wrap rows with the expression and order")
    return parser


def _parse_params(text: str) -> HypParams:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 5:
        raise argparse.ArgumentTypeError(f"--params needs five comma-separated numbers, got {len(parts)}")
    try:
        return HypParams.of(*(float(p) for p in parts))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"--params: {e}") from None


# ============== 子命令 ==============

def _cmd_verify(args: argparse.Namespace) -> int:
    config = CliConfig(
        subcommand="verify",
        order24=args.order,
        tolerance=args.tol,
        output=OutputMode.JSON if args.json else OutputMode.TABLE,
        parallelism=args.jobs,
        seed=args.seed,
    )
    reports = verify_service.run_all(
        config.to_settings(),
        names=args.check,
        prefix=args.prefix,
        tolerance=config.tolerance,
    )
    if config.output is OutputMode.JSON:
        print(dump_json([r.to_row() for r in reports]))
    else:
        print(format_report_table(reports))
    return EXIT_OK if verify_service.all_passed(reports) else EXIT_FAILED


def _cmd_lvalue(args: argparse.Namespace) -> int:
    settings = Settings()
    curve = get_curve(args.curve)
    results: list[LValueResult] = []
    for method in _METHOD_CHOICES[args.method]:
        if method is LValueMethod.SERIES and args.terms is not None:
            results.append(lvalue2_series(curve, args.terms, settings))
        else:
            results.append(compute_lvalue(curve, method, settings))

    spread = max(r.value for r in results) - min(r.value for r in results)
    if args.json:
        print(dump_json({"results": [r.model_dump(mode="json") for r in results], "spread": spread}))
    else:
        for r in results:
            print(f"L(E_{r.curve}, 2)  {r.method.value:<15} {r.value:.17g}  +- {r.error_bound:.3e}  ({r.terms_or_nodes} terms/nodes, {r.runtime_ms:.1f} ms)")
        if len(results) > 1:
            print(f"spread {spread:.3e}")
    if len(results) > 1 and spread > settings.tol_cross_method:
        logger.warning(f"L(E_{args.curve}, 2) routes disagree by {spread:.3e}")
        return EXIT_FAILED
    return EXIT_OK


def _cmd_hyp(args: argparse.Namespace) -> int:
    if args.hyp_command == "eval":
        params = _parse_params(args.params)
        result = hyp3f2_unit(params, args.terms)
        if args.json:
            print(dump_json({"params": list(params.as_tuple()), **result.model_dump()}))
        else:
            print(f"3F2{list(params.as_tuple())}(1) = {result.value:.17g}  +- {result.error_bound:.3e}  ({result.terms} terms)")
        return EXIT_OK

    q = FtildeParams(alpha=args.alpha, beta=args.beta)
    definition, dixon = ftilde(q), ftilde_via_dixon(q)
    if args.json:
        print(dump_json({"alpha": q.alpha, "beta": q.beta, "definition": definition, "dixon": dixon}))
    else:
        print(f"F~({q.alpha:g}, {q.beta:g}) = {definition:.17g}  (dixon {dixon:.17g}, diff {abs(definition - dixon):.3e})")
    return EXIT_OK


def _cmd_qexpand(args: argparse.Namespace) -> int:
    ast = parse(args.expr)
    rows = eval_expr(ast, args.order).to_json_rows()
    if args.json:
        print(dump_json({"expr": to_text(ast), "order": args.order, "rows": rows}))
    else:
        print(dump_json(rows))
    return EXIT_OK


_COMMANDS = {
    "verify": _cmd_verify,
    "lvalue": _cmd_lvalue,
    "hyp": _cmd_hyp,
    "qexpand": _cmd_qexpand,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    level = logging.INFO if args.verbose else Settings().log_level
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        return _COMMANDS[args.subcommand](args)
    except VerifyError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, argparse.ArgumentTypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    """console script 入口"""
    sys.exit(main())


if __name__ == "__main__":
    run()
