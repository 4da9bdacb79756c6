#!/usr/bin/env python3
"""Reference runner for dynamic metrics on Python sources.

Invoked as::

    pyrunner.py check <source>      syntax-check only, no execution
    pyrunner.py run <source>        execute the program
    pyrunner.py coverage <source>   execute under a line tracer and print
                                    a JSON coverage summary as the final
                                    stdout line

Exit status 0 means the requested step succeeded. ``check`` reports
syntax errors on stderr, one line per error, each containing the word
"Error". ``coverage`` prints::

    {"executed_lines": [...], "executable_lines": [...]}

where executable lines are the statement start lines of the parsed tree
and executed lines are those the tracer saw.
"""

import ast
import json
import sys


def load(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def cmd_check(path):
    try:
        compile(load(path), path, "exec", ast.PyCF_ONLY_AST)
    except SyntaxError as err:
        line = err.lineno if err.lineno is not None else 0
        print("SyntaxError: %s (line %d)" % (err.msg, line), file=sys.stderr)
        return 1
    except UnicodeDecodeError as err:
        print("DecodeError: %s" % (err,), file=sys.stderr)
        return 1
    return 0


def cmd_run(path):
    source = load(path)
    try:
        code = compile(source, path, "exec")
    except SyntaxError as err:
        print("SyntaxError: %s (line %s)" % (err.msg, err.lineno), file=sys.stderr)
        return 1
    namespace = {"__name__": "__main__", "__file__": path, "__builtins__": __builtins__}
    try:
        exec(code, namespace)
    except SystemExit as err:
        return int(err.code) if isinstance(err.code, int) else int(bool(err.code))
    except BaseException:
        import traceback

        traceback.print_exc()
        return 1
    return 0


def executable_lines(tree):
    lines = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.stmt):
            lines.add(node.lineno)
    return lines


def cmd_coverage(path):
    source = load(path)
    try:
        tree = ast.parse(source, path)
    except SyntaxError as err:
        print("SyntaxError: %s (line %s)" % (err.msg, err.lineno), file=sys.stderr)
        return 1
    code = compile(tree, path, "exec")
    executed = set()

    def tracer(frame, event, arg):
        if event == "line" and frame.f_code.co_filename == path:
            executed.add(frame.f_lineno)
        return tracer

    namespace = {"__name__": "__main__", "__file__": path, "__builtins__": __builtins__}
    failed = False
    sys.settrace(tracer)
    try:
        exec(code, namespace)
    except SystemExit:
        pass
    except BaseException:
        sys.settrace(None)
        import traceback

        traceback.print_exc()
        failed = True
    finally:
        sys.settrace(None)
    if failed:
        return 1
    summary = {
        "executed_lines": sorted(executed),
        "executable_lines": sorted(executable_lines(tree)),
    }
    print(json.dumps(summary))
    return 0


def main(argv):
    if len(argv) != 3 or argv[1] not in ("check", "run", "coverage"):
        print("usage: pyrunner.py {check|run|coverage} <source>", file=sys.stderr)
        return 2
    command, path = argv[1], argv[2]
    if command == "check":
        return cmd_check(path)
    if command == "run":
        return cmd_run(path)
    return cmd_coverage(path)


if __name__ == "__main__":
    sys.exit(main(sys.argv))
