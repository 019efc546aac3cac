import json

from conftest import FIXTURES
from duolang.cli import main


def test_run_fixture(capsys):
    assert main(["run", str(FIXTURES / "swap.php")]) == 0
    assert capsys.readouterr().out == "20 10\n" * 3


def test_run_python_host(capsys):
    assert main(["run", str(FIXTURES / "host.py")]) == 0
    assert capsys.readouterr().out == (FIXTURES / "host.out").read_text()


def test_run_uncaught_exit_code(tmp_path, capsys):
    f = tmp_path / "boom.php"
    f.write_text('throw new Exception("boom");\n')
    assert main(["run", str(f)]) == 1
    assert "Uncaught Exception: boom" in capsys.readouterr().err


def test_run_syntax_error_exit_code(tmp_path):
    f = tmp_path / "bad.php"
    f.write_text("$a = ;\n")
    assert main(["run", str(f)]) == 255


def test_lang_override(tmp_path, capsys):
    f = tmp_path / "prog.txt"
    f.write_text("print(1 + 1)\n")
    assert main(["run", "--lang", "py", str(f)]) == 0
    assert capsys.readouterr().out == "2\n"


def test_export_to_file(tmp_path, capsys):
    out = tmp_path / "swap.exported.php"
    assert main(["export", str(FIXTURES / "swap.php"), "-o", str(out)]) == 0
    assert "compile_py_func" in out.read_text()
    assert main(["run", str(out)]) == 0
    assert capsys.readouterr().out == "20 10\n" * 3


def test_export_error(tmp_path, capsys):
    f = tmp_path / "open.php"
    f.write_text("\n<%py\nx = 1\n")
    assert main(["export", str(f)]) == 2
    assert ":2:" in capsys.readouterr().err


def test_bench_subset(tmp_path, capsys):
    js = tmp_path / "r.json"
    code = main(["bench", "--iters", "1", "--procs", "1", "--bench", "sum",
                 "--json", str(js)])
    assert code == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1].split()[3] == "1.000"
    assert json.loads(js.read_text())["benchmarks"]["sum"]["composed-php"]["relative"] == 1.0


def test_bench_unknown(capsys):
    assert main(["bench", "--bench", "nope", "--iters", "1", "--procs", "1"]) == 2
