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

#include <stdio.h>

#include "miniplist.h"

int main(void) {
  const unsigned char doc[] = {'M', 'P', 'L', 'X', 1, 2, 3};
  mini_plist *p = mini_parse(doc, sizeof doc);
  printf("%u entries\n", mini_entry_count(p));
  return 0;
}
