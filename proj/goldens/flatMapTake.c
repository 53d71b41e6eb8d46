/* pipeline: flatMapTake, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1, const int * a2, int n2){
  int64_t v_1 = 0;
  int v_2 = 2 * n1;
  int v_3 = 0;
  while ((v_2 > 0) && (v_3 < n1))
  {
    int const t_4 = a1[v_3];
    int v_5 = 0;
    while ((v_5 < n2) && (v_2 > 0))
    {
      int const t_6 = a2[v_5];
      int const t_7 = t_4 * t_6;
      v_2--;
      v_1 = v_1 + t_7;
      v_5++;
    }
    v_3++;
  }
  return v_1;
}
