"""
Database utilities for qdual.
Contains the context manager for database access and the ledger of verification runs.
"""
import json
import os
import sqlite3
from contextlib import contextmanager
from datetime import datetime, timezone

# Database path - can be overridden for testing via environment variable
_DB_PATH = os.getenv("QDUAL_DB_PATH", "qdual.db")


def get_db_path():
    """
    Get the current database path.

    Returns:
        str: The path to the database file.
    """
    return _DB_PATH


def set_db_path(path: str):
    """
    Set the database path (the --db flag and the tests use this).

    Args:
        path (str): The path to the database file.
    """
    global _DB_PATH
    _DB_PATH = path


@contextmanager
def use_db(mode: str):
    """
    Context manager for ledger access.
    Opens the ledger with foreign keys enforced, so deleting a run removes its cases.
    A run and its cases are written in one transaction: an error rolls back both,
    and "write" commits only when the block exits cleanly.

    Parameters
    ----------
    mode : str
        Either "read" or "write". Controls whether a commit is issued
        when the context exits cleanly. "write" mode commits changes, "read" mode does not.

    Yields
    ------
    cursor
        A SQLite cursor object for executing queries.

    Raises
    ------
    ValueError
        If mode is not "read" or "write".
    """
    if mode not in {"read", "write"}:
        raise ValueError(f"Invalid mode: {mode}")

    conn = sqlite3.connect(_DB_PATH)
    try:
        conn.execute("PRAGMA foreign_keys = ON")
        cursor = conn.cursor()
        try:
            yield cursor
        except Exception:
            conn.rollback()
            raise
        else:
            if mode == "write":
                conn.commit()
    finally:
        conn.close()


def init_db():
    """
    Initialize the ledger tables if they don't yet exist.
    Creates the following tables:
    - runs: one row per suite run with its configuration and summary counts
    - cases: one row per case of a run
    """
    with use_db("write") as cursor:
        cursor.execute("""
            CREATE TABLE IF NOT EXISTS runs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                suite TEXT NOT NULL,
                mode TEXT NOT NULL,
                seed INTEGER NOT NULL,
                created TEXT NOT NULL,
                total INTEGER NOT NULL,
                equal INTEGER NOT NULL,
                probable INTEGER NOT NULL,
                failed INTEGER NOT NULL,
                skipped INTEGER NOT NULL,
                unverified INTEGER NOT NULL DEFAULT 0
            )
        """)
        cursor.execute("""
            CREATE TABLE IF NOT EXISTS cases (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                run_id INTEGER NOT NULL REFERENCES runs(id) ON DELETE CASCADE,
                word TEXT NOT NULL,
                dual TEXT NOT NULL,
                n INTEGER,
                verdict TEXT NOT NULL,
                kind TEXT NOT NULL,
                witness TEXT,
                ms REAL NOT NULL
            )
        """)


# run ledger operations
#---------------------------------------------------------------------------------
def save_report(report) -> int:
    """
    Store a verifier Report and its cases.

    Args:
        report (Report): The report to persist.

    Returns:
        int: The id of the new run.
    """
    summary = report.summary
    created = datetime.now(timezone.utc).isoformat(timespec="seconds")
    with use_db("write") as cursor:
        cursor.execute(
            "INSERT INTO runs (suite, mode, seed, created, total, equal, probable, failed, skipped, unverified) "
            "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)",
            (report.suite, report.config.get("mode", ""), report.config.get("seed", 0), created,
             summary["total"], summary["equal"], summary["probable"], summary["failed"], summary["skipped"],
             summary["unverified"]),
        )
        run_id = cursor.lastrowid
        cursor.executemany(
            "INSERT INTO cases (run_id, word, dual, n, verdict, kind, witness, ms) VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
            [
                (run_id, case.word, case.dual, case.n, case.verdict, case.kind,
                 json.dumps(case.witness, sort_keys=True) if case.witness is not None else None, case.ms)
                for case in report.cases
            ],
        )
    return run_id


def get_runs(limit: int = None):
    """
    Get stored runs, newest first.

    Args:
        limit (int): Optional maximum number of rows.
    """
    query = ("SELECT id, suite, mode, seed, created, total, equal, probable, failed, skipped, unverified "
             "FROM runs ORDER BY id DESC")
    with use_db("read") as cursor:
        if limit is None:
            cursor.execute(query)
        else:
            cursor.execute(query + " LIMIT ?", (limit,))
        rows = cursor.fetchall()
    return rows


def get_cases_for_run(run_id: int):
    """
    Get the cases of one run in their original order.

    Args:
        run_id (int): The id of the run.
    """
    with use_db("read") as cursor:
        cursor.execute(
            "SELECT word, dual, n, verdict, kind, witness, ms FROM cases WHERE run_id = ? ORDER BY id",
            (run_id,),
        )
        rows = cursor.fetchall()
    return rows


def get_failed_cases(run_id: int = None):
    """
    Get every NotEqual case, optionally restricted to one run.
    """
    with use_db("read") as cursor:
        if run_id is None:
            cursor.execute("SELECT run_id, word, dual, n, kind, witness FROM cases WHERE verdict = 'NotEqual' ORDER BY id")
        else:
            cursor.execute(
                "SELECT run_id, word, dual, n, kind, witness FROM cases WHERE verdict = 'NotEqual' AND run_id = ? ORDER BY id",
                (run_id,),
            )
        rows = cursor.fetchall()
    return rows


def delete_run(run_id: int):
    """
    Delete a run; its cases go with it through the foreign key.

    Args:
        run_id (int): The id of the run to delete.
    """
    with use_db("write") as cursor:
        cursor.execute("DELETE FROM runs WHERE id = ?", (run_id,))
