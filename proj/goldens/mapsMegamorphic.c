/* pipeline: mapsMegamorphic, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1){
  int64_t v_1 = 0;
  int v_2 = 0;
  while (v_2 < n1)
  {
    int const t_3 = a1[v_2];
    int const t_4 = t_3 * 1;
    int const t_5 = t_4 * 2;
    int const t_6 = t_5 * 3;
    int const t_7 = t_6 * 4;
    int const t_8 = t_7 * 5;
    int const t_9 = t_8 * 6;
    int const t_10 = t_9 * 7;
    v_1 = v_1 + t_10;
    v_2++;
  }
  return v_1;
}
