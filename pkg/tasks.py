"""Tasks for maintaining the project."""

from invoke import task


@task
def requirements(c):
    """Install project requirements."""
    c.run("pip install -r requirements.txt")


@task
def dev_requirements(c):
    """Install development requirements."""
    c.run("pip install -r requirements_dev.txt")


@task
def test(c):
    """Run tests, skipping the desk-scale acceptance runs."""
    c.run("pytest tests/ -m 'not slow'")


@task
def test_all(c):
    """Run every test including the slow acceptance runs."""
    c.run("pytest tests/")


@task
def validate(c):
    """Run the full validation harness."""
    c.run("python src/ford_cherries/validate.py experiment=acceptance")


@task
def validate_debug(c):
    """Run the exact and asymptotic checks at small sizes."""
    c.run("python src/ford_cherries/validate.py experiment=debug")


@task
def build_docs(c):
    """Build documentation."""
    c.run("mkdocs build --config-file docs/mkdocs.yaml")


@task
def serve_docs(c):
    """Serve documentation."""
    c.run("mkdocs serve --config-file docs/mkdocs.yaml")
