from app.application.services.corpus_service import CORPUS_COLUMNS


def test_corpus_replays_as_expected(corpus_service, corpus_path):
    table = corpus_service.run_corpus(corpus_path)
    assert list(table.columns) == CORPUS_COLUMNS
    assert len(table) == 41
    assert table["ok"].all()
    negative = table[table["file"].str.startswith("negative/")]
    assert len(negative) == 17
    assert set(negative["outcome"]) == {"reject"}
    assert set(table.loc[table["expected"] == "accept", "outcome"]) == {"accept"}
    assert list(table["file"]) == sorted(table["file"])


def test_single_negative_file(corpus_service, corpus_path):
    table = corpus_service.run_corpus(corpus_path / "negative" / "refl_distinct_sides.psf")
    row = table.iloc[0]
    assert row["file"] == "refl_distinct_sides.psf"
    assert row["expected"] == "reject"
    assert row["step"] == "s1"
    assert row["reason"] == "refl-mismatch"
    assert row["ok"]


def test_corpus_with_audit(corpus_service, audits, corpus_path):
    pool = audits.resolve_pool("catalog")
    table = corpus_service.run_corpus(corpus_path / "one_letter_period.psf", pool)
    assert "violations" in table.columns
    assert table["violations"].tolist() == [0]
    assert table["ok"].all()


def test_unexpected_outcomes(corpus_service, tmp_path):
    (tmp_path / "negative").mkdir()
    (tmp_path / "good.psf").write_text("sig monoid\nstep s1 = refl x\ngoal: x = x\n")
    (tmp_path / "broken.psf").write_text("sig monoid\nstep s1 = refl x\n")
    (tmp_path / "negative" / "accepted.psf").write_text(
        "# expect-reject s1\nsig monoid\nstep s1 = refl x\ngoal: x = x\n"
    )
    table = corpus_service.run_corpus(tmp_path).set_index("file")
    assert table.loc["good.psf", "ok"]
    assert table.loc["broken.psf", "outcome"] == "error"
    assert not table.loc["broken.psf", "ok"]
    assert table.loc["negative/accepted.psf", "outcome"] == "accept"
    assert not table.loc["negative/accepted.psf", "ok"]
