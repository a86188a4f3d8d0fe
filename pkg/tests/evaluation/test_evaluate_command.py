from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError


def write_labels(path, labels):
    path.write_text("".join(f"{label}\n" for label in labels))
    return str(path)


def test__matching_files__prints_perfect_scores_and_writes_csv(tmp_path):
    pred = write_labels(tmp_path / "pred.txt", [1, 1, 0, 0, 2, 2])
    truth = write_labels(tmp_path / "truth.txt", [0, 0, 1, 1, 2, 2])
    out = StringIO()
    call_command("evaluate", pred=pred, truth=truth, out=str(tmp_path / "metrics.csv"), stdout=out)
    assert "ACC=1.0000" in out.getvalue()
    header, row = (tmp_path / "metrics.csv").read_text().splitlines()
    assert header == "acc,f1,nmi,ari"
    assert [float(value) for value in row.split(",")] == pytest.approx([1.0, 1.0, 1.0, 1.0])


def test__length_mismatch__exits_with_data_error(tmp_path):
    pred = write_labels(tmp_path / "pred.txt", [0, 1])
    truth = write_labels(tmp_path / "truth.txt", [0, 1, 1])
    with pytest.raises(CommandError) as error:
        call_command("evaluate", pred=pred, truth=truth)
    assert error.value.returncode == 2
    assert "truth.txt" in str(error.value)


def test__malformed_label__reports_file_and_line(tmp_path):
    pred = tmp_path / "pred.txt"
    pred.write_text("0\n1\nx\n")
    truth = write_labels(tmp_path / "truth.txt", [0, 1, 1])
    with pytest.raises(CommandError, match=r"pred.txt:3"):
        call_command("evaluate", pred=str(pred), truth=truth)


def test__missing_arguments__exits_with_usage_error():
    with pytest.raises(CommandError) as error:
        call_command("evaluate")
    assert error.value.returncode == 1
