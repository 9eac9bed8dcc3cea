/* Copyright 2026 The masfuzz Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "xlsxlite.h"

#include <stdlib.h>
#include <string.h>

#define XL_MAX_SHEETS 8
#define XL_MAX_FORMATS 16

struct xl_format {
  int bold;
};

struct worksheet {
  char name[32];
  int cells_written;
  int formulas_written;
};

struct workbook {
  char filename[64];
  worksheet sheets[XL_MAX_SHEETS];
  int sheet_count;
  xl_format formats[XL_MAX_FORMATS];
  int format_count;
  int closed;
};

workbook *workbook_new(const char *filename) {
  workbook *wb = (workbook *)calloc(1, sizeof(*wb));
  if (wb == NULL) return NULL;
  if (filename != NULL) {
    strncpy(wb->filename, filename, sizeof(wb->filename) - 1);
  }
  return wb;
}

worksheet *workbook_add_worksheet(workbook *wb, const char *name) {
  if (wb == NULL || wb->closed || wb->sheet_count >= XL_MAX_SHEETS) return NULL;
  worksheet *ws = &wb->sheets[wb->sheet_count++];
  if (name != NULL && name[0] != '\0') {
    strncpy(ws->name, name, sizeof(ws->name) - 1);
  } else {
    ws->name[0] = 'S';
    ws->name[1] = (char)('0' + wb->sheet_count);
    ws->name[2] = '\0';
  }
  return ws;
}

xl_format *workbook_add_format(workbook *wb) {
  if (wb == NULL || wb->closed || wb->format_count >= XL_MAX_FORMATS) return NULL;
  return &wb->formats[wb->format_count++];
}

void format_set_bold(xl_format *fmt) {
  if (fmt == NULL) return;
  fmt->bold = 1;
}

int worksheet_write_number(worksheet *ws, int row, int col, double value, xl_format *fmt) {
  (void)fmt;
  if (ws == NULL || row < 0 || col < 0) return -1;
  if (value != value) return -1; /* NaN cells are rejected */
  ws->cells_written++;
  return 0;
}

int worksheet_write_string(worksheet *ws, int row, int col, const char *text, xl_format *fmt) {
  (void)fmt;
  if (ws == NULL || row < 0 || col < 0 || text == NULL) return -1;
  ws->cells_written++;
  return 0;
}

int worksheet_write_array_formula(worksheet *ws, int first_row, int first_col, int last_row,
                                  int last_col, const char *formula, xl_format *fmt) {
  (void)fmt;
  if (ws == NULL || formula == NULL) return -1;
  if (first_row < 0 || first_col < 0 || last_row < first_row || last_col < first_col) return -1;
  if (formula[0] != '{') return -1;
  ws->formulas_written++;
  return 0;
}

int workbook_close(workbook *wb) {
  if (wb == NULL) return -1;
  int rc = wb->closed ? -1 : 0;
  free(wb);
  return rc;
}
