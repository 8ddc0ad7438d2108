import pandas as pd

from conv_app.api.benchmark.serializers import BenchReportSerializer

CSV_COLUMNS = ["method", "dim", "runs", "median_seconds", "rel_error_at_min", "status"]
SKIPPED_CELL = "-----"


def reports_to_frame(reports):
    """
    Tabulate benchmark reports, one row per (method, D).

    Returns:
        pandas.DataFrame: Columns in CSV order; skip records hold NaN timings.
    """
    rows = BenchReportSerializer(reports, many=True).data
    return pd.DataFrame(list(rows), columns=CSV_COLUMNS)


def write_csv(reports, sink):
    """
    Write the CSV report to a path or text stream.

    Floats use their shortest round-trip representation; skipped cells
    are left empty.
    """
    reports_to_frame(reports).to_csv(sink, index=False, lineterminator="\n")


def _pivot(df, column):
    table = df.pivot(index="method", columns="dim", values=column)
    skipped = df.pivot(index="method", columns="dim", values="status") != "ok"
    return table.astype(object).mask(skipped, SKIPPED_CELL)


def export_to_excel(reports, path):
    """
    Export the reports to an Excel workbook.

    The first sheet holds the flat CSV rows; two further sheets lay the
    runtimes and the probe errors out with methods as rows and D as
    columns, skipped cells shown as dashes.

    Args:
        reports (Iterable[BenchReport]): The benchmark results.
        path (str | pathlib.Path | BinaryIO): Destination workbook.
    """
    df = reports_to_frame(reports)
    with pd.ExcelWriter(path, engine="xlsxwriter") as writer:
        df.to_excel(writer, index=False, sheet_name="Reports")
        _pivot(df, "median_seconds").to_excel(writer, sheet_name="Runtimes")
        _pivot(df, "rel_error_at_min").to_excel(writer, sheet_name="Relative error")

        workbook = writer.book
        seconds_format = workbook.add_format({"num_format": "0.000000"})
        error_format = workbook.add_format({"num_format": "0.00E+00"})
        reports_sheet = writer.sheets["Reports"]
        reports_sheet.set_column(3, 3, 16, seconds_format)
        reports_sheet.set_column(4, 4, 18, error_format)
        reports_sheet.set_column(5, 5, 22)
        writer.sheets["Runtimes"].set_column(1, len(df["dim"].unique()), 12, seconds_format)
        writer.sheets["Relative error"].set_column(1, len(df["dim"].unique()), 12, error_format)
