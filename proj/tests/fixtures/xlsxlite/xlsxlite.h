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

/* In-memory spreadsheet writer modeled after the classic
 * workbook/worksheet/format API shape.
 */

#ifndef XLSXLITE_H_
#define XLSXLITE_H_

typedef struct workbook workbook;
typedef struct worksheet worksheet;
typedef struct xl_format xl_format;

/** Creates a workbook that will be saved under the given name. */
workbook *workbook_new(const char *filename);

/** Adds a worksheet; a NULL name picks "Sheet1", "Sheet2", ... */
worksheet *workbook_add_worksheet(workbook *wb, const char *name);

/** Allocates a cell format owned by the workbook. */
xl_format *workbook_add_format(workbook *wb);

/** Turns on the bold attribute of a format. */
void format_set_bold(xl_format *fmt);

/** Writes a number cell; the format may be NULL. Returns 0 on success. */
int worksheet_write_number(worksheet *ws, int row, int col, double value, xl_format *fmt);

/** Writes a string cell; the format may be NULL. Returns 0 on success. */
int worksheet_write_string(worksheet *ws, int row, int col, const char *text, xl_format *fmt);

/** Writes an array formula such as "{=SUM(B1:B3*C1:C3)}" over the given
 *  range. Returns 0 on success.
 */
int worksheet_write_array_formula(worksheet *ws, int first_row, int first_col, int last_row,
                                  int last_col, const char *formula, xl_format *fmt);

/** Finalizes and releases the workbook. Returns 0 on success. */
int workbook_close(workbook *wb);

#endif /* XLSXLITE_H_ */
