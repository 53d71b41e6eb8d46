/* pipeline: zipFilterFilter, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1, const int * a2, int n2){
  int64_t v_1 = 0;
  int v_2 = 0;
  int v_3 = 0;
  while ((v_2 < n1) && (v_3 < n2))
  {
    int const t_4 = a2[v_3];
    if (t_4 > 5)
    {
      bool v_5 = true;
      while (v_5)
      {
        int const t_6 = a1[v_2];
        if (t_6 > 7)
        {
          v_5 = false;
          v_1 = v_1 + (t_6 + t_4);
        }
        v_2++;
        v_5 = v_5 && (v_2 < n1);
      }
    }
    v_3++;
  }
  return v_1;
}
