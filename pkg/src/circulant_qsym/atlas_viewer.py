import sys

from PySide6.QtCore import Qt, QAbstractTableModel, QModelIndex
from PySide6.QtGui import QColor, QPalette

from circulant_qsym.explore import enumerate_atlas

COLUMNS = ["S", "Orbit", "k", "2-maximal", "Verdict", "Classes", "Distinct eigenvalues"]

VERDICT_COLOURS = {
    "NoQuantumSymmetry": "#2e7d32",
    "HasQuantumSymmetry": "#c62828",
    "Undecided": "#f9a825",
}


class AtlasTableModel(QAbstractTableModel):
    """Read-only model with one row per atlas entry."""

    def __init__(self, entries, parent=None):
        super().__init__(parent)
        self._data = list(entries)

    def rowCount(self, parent=QModelIndex()):
        return len(self._data)

    def columnCount(self, parent=QModelIndex()):
        return len(COLUMNS)

    def headerData(self, section, orientation, role=Qt.DisplayRole):
        if role == Qt.DisplayRole and orientation == Qt.Horizontal:
            return COLUMNS[section]
        return None

    def _cell(self, entry, col):
        return [
            "{" + ", ".join(map(str, entry.connection_set)) + "}",
            entry.orbit_size,
            entry.k,
            "-" if entry.is_2maximal is None else ("yes" if entry.is_2maximal else "no"),
            entry.verdict,
            entry.class_count,
            entry.distinct_eigenvalues,
        ][col]

    def data(self, index, role=Qt.DisplayRole):
        if not index.isValid():
            return None
        entry = self._data[index.row()]
        if role == Qt.DisplayRole:
            return str(self._cell(entry, index.column()))
        if role == Qt.BackgroundRole and index.column() == COLUMNS.index("Verdict"):
            return QColor(VERDICT_COLOURS[entry.verdict])
        return None

    def flags(self, index):
        if not index.isValid():
            return Qt.NoItemFlags
        return Qt.ItemIsSelectable | Qt.ItemIsEnabled

    def entry(self, row):
        return self._data[row]


def apply_dark_theme(app):
    """Fusion style with a dark palette."""
    app.setStyle("Fusion")

    dark_palette = QPalette()
    dark_palette.setColor(QPalette.ColorRole.Window, QColor(53, 53, 53))
    dark_palette.setColor(QPalette.ColorRole.WindowText, QColor(255, 255, 255))
    dark_palette.setColor(QPalette.ColorRole.Base, QColor(35, 35, 35))
    dark_palette.setColor(QPalette.ColorRole.AlternateBase, QColor(53, 53, 53))
    dark_palette.setColor(QPalette.ColorRole.Text, QColor(255, 255, 255))
    dark_palette.setColor(QPalette.ColorRole.Button, QColor(53, 53, 53))
    dark_palette.setColor(QPalette.ColorRole.ButtonText, QColor(255, 255, 255))
    dark_palette.setColor(QPalette.ColorRole.Highlight, QColor(42, 130, 218))
    dark_palette.setColor(QPalette.ColorRole.HighlightedText, QColor(0, 0, 0))
    app.setPalette(dark_palette)


def show_atlas(p, max_p, threads=1):
    # widgets are imported here so the model stays usable without a display
    from PySide6.QtWidgets import (
        QApplication, QDialog, QHBoxLayout, QLabel, QPushButton, QTableView, QVBoxLayout
    )

    entries = enumerate_atlas(p, max_p=max_p, threads=threads)

    app = QApplication.instance() or QApplication(sys.argv)
    apply_dark_theme(app)

    dialog = QDialog()
    dialog.setWindowTitle(f"Circulant graphs on {p} vertices")
    dialog.resize(900, 600)

    layout = QVBoxLayout()
    layout.addWidget(QLabel(
        f"{len(entries)} multiplier classes covering {2 ** ((p - 1) // 2)} connection sets"
    ))

    model = AtlasTableModel(entries, dialog)
    table = QTableView()
    table.setModel(model)
    table.horizontalHeader().setStretchLastSection(True)
    table.setSelectionBehavior(QTableView.SelectRows)
    layout.addWidget(table)

    btn_layout = QHBoxLayout()
    close_btn = QPushButton("Close")
    close_btn.clicked.connect(dialog.accept)
    btn_layout.addStretch()
    btn_layout.addWidget(close_btn)
    layout.addLayout(btn_layout)

    dialog.setLayout(layout)
    dialog.exec()
    return len(entries)
