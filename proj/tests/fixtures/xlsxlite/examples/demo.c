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

int main(void) {
  workbook *wb = workbook_new("demo.xlsx");
  worksheet *ws = workbook_add_worksheet(wb, 0);
  xl_format *bold = workbook_add_format(wb);
  format_set_bold(bold);
  worksheet_write_number(ws, 0, 0, 123.456, 0);
  worksheet_write_array_formula(ws, 4, 0, 6, 0, "{=SUM(B5:B7*C5:C7)}", bold);
  return workbook_close(wb);
}
